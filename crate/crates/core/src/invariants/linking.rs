use super::InvariantError;
use crate::diagram::Diagram;

/// Pairwise linking numbers. Crossingless components come last, in the
/// component order of the diagram.
pub fn linking_matrix(l: &Diagram) -> Result<Vec<Vec<i64>>, InvariantError> {
    let k = l.component_count();
    if k < 2 {
        return Err(InvariantError::TooFewComponents(k));
    }
    let mut twice = vec![vec![0i64; k]; k];
    for x in l.crossings() {
        let a = l.component_of(x.under_in());
        let b = l.component_of(x.over_in());
        if a != b {
            twice[a][b] += x.sign().value();
            twice[b][a] += x.sign().value();
        }
    }
    Ok(twice
        .into_iter()
        .map(|row| row.into_iter().map(|v| v / 2).collect())
        .collect())
}
