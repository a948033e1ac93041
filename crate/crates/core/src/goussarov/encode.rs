use super::{goussarov_difference, DetourError, DetourFamily, HostToken, SwitchRegion};
use crate::diagram::{mark_singular, Diagram, GaussCode, Pass, Sign, SingularDiagram};
use crate::invariants::{Invariant, Value};
use crate::vassiliev::resolve_all;

/// Encodes each listed crossing by a pair of regions: region `2j` sits just
/// after crossing `crossings[j]` on its over-strand, region `2j + 1` just
/// after it on its under-strand. Both detours are empty on route 0; on
/// route 1 they clasp the two strands with two crossings of the opposite
/// sign, so taking both switches the crossing and taking one changes
/// nothing.
pub fn encode_crossings(k: &Diagram, crossings: &[usize]) -> Result<DetourFamily, DetourError> {
    if !k.is_knot() {
        return Err(DetourError::NotAKnot(k.component_count()));
    }
    mark_singular(k, crossings)?;
    let word = k
        .to_gauss()?
        .components()
        .first()
        .cloned()
        .unwrap_or_default();
    let c = k.crossing_count();
    let mut host = Vec::new();
    let mut regions = vec![SwitchRegion::new(Vec::new(), Vec::new()); 2 * crossings.len()];
    for p in word {
        host.push(HostToken::Pass(p));
        let Some(j) = crossings.iter().position(|i| *i == p.crossing) else {
            continue;
        };
        let (x, y) = (c + 2 * j, c + 2 * j + 1);
        let sign = p.sign.flip();
        let pass = |crossing, over| Pass {
            crossing,
            over,
            sign,
        };
        let r = if p.over { 2 * j } else { 2 * j + 1 };
        regions[r].route1 = if p.over {
            vec![pass(x, true), pass(y, false)]
        } else {
            vec![pass(x, false), pass(y, true)]
        };
        host.push(HostToken::Socket(r));
    }
    DetourFamily::new(host, regions)
}

/// Two-region family whose resolutions with both detours taken is `K` with
/// crossing `i` switched, and `K` otherwise.
pub fn encode_crossing_as_detours(k: &Diagram, i: usize) -> Result<DetourFamily, DetourError> {
    encode_crossings(k, &[i])
}

/// Replaces every double point by a pair of regions on the all-negative
/// resolution, so that the empty resolution of each pair is the negative one.
pub fn encode_singular_as_bracelet(k: &SingularDiagram) -> Result<DetourFamily, DetourError> {
    let base = k.resolve_with(|_| Sign::Negative);
    let points: Vec<usize> = k.singular().iter().copied().collect();
    encode_crossings(&base, &points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
}

/// Compares the invariant of the full resolution of `K` with the
/// alternating sum over its bracelet encoding.
pub fn theorem1_identity_check(
    k: &SingularDiagram,
    inv: Invariant,
) -> Result<IdentityCheck, DetourError> {
    let lhs = inv.evaluate_sum(&resolve_all(k))?;
    let rhs = goussarov_difference(&encode_singular_as_bracelet(k)?, inv)?;
    let equal = lhs == rhs;
    Ok(IdentityCheck { lhs, rhs, equal })
}

const TWIST_R1: Sign = Sign::Negative;
const TWIST_R2: Sign = Sign::Positive;

/// Passes of the double twist word `c1..ca d1..db ca..c1 db..d1`, labeled
/// `(is_c, index)`, with alternating over/under starting over.
fn twist_word(a: usize, b: usize) -> Vec<((bool, usize), bool)> {
    let labels = (1..=a)
        .map(|i| (true, i))
        .chain((1..=b).map(|i| (false, i)))
        .chain((1..=a).rev().map(|i| (true, i)))
        .chain((1..=b).rev().map(|i| (false, i)));
    labels.enumerate().map(|(j, l)| (l, j % 2 == 0)).collect()
}

fn twist_pass(((is_c, i), over): ((bool, usize), bool)) -> Pass {
    if is_c {
        Pass {
            crossing: i,
            over,
            sign: TWIST_R1,
        }
    } else {
        Pass {
            crossing: 100 + i,
            over,
            sign: TWIST_R2,
        }
    }
}

/// Alternating double twist knot with twist regions of `a` and `b`
/// crossings, both even. `(2, 2)` is 4_1, `(4, 2)` is 6_1, `(4, 4)` is 8_3.
pub fn double_twist_knot(a: usize, b: usize) -> Result<Diagram, DetourError> {
    if a % 2 == 1 || b % 2 == 1 {
        return Err(DetourError::Parse(format!(
            "twist counts {a}, {b} must be even"
        )));
    }
    let passes = twist_word(a, b).into_iter().map(twist_pass).collect();
    Ok(GaussCode::knot(passes).to_diagram()?)
}

/// Two-region family on the `(4, 4)` double twist word. Region 0 lengthens
/// the second twist region from 2 to 4 crossings; region 1 removes the
/// first twist region. The resolutions for the subsets {}, {0}, {1}, {0,1}
/// are 6_1, 8_3 and two unknots.
pub fn double_twist_family() -> DetourFamily {
    let word: Vec<Pass> = twist_word(4, 4).into_iter().map(twist_pass).collect();
    // word = c1..c4 d1..d4 | c4..c1 d4..d1; the first half goes into regions
    let mut host = vec![HostToken::Socket(1), HostToken::Socket(0)];
    host.extend(word[8..].iter().map(|p| HostToken::Pass(*p)));
    let regions = vec![
        SwitchRegion::new(word[4..6].to_vec(), word[4..8].to_vec()),
        SwitchRegion::new(word[0..4].to_vec(), Vec::new()),
    ];
    DetourFamily::new(host, regions).expect("double twist family is valid")
}
