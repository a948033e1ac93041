use super::{Crossing, Diagram, DiagramError, Sign};

impl Diagram {
    /// Closure of a braid on `strands` strands. Generator `k > 0` is the
    /// positive crossing of positions `k` and `k+1`, `-k` its inverse.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
        let mut current: Vec<u32> = (1..=strands as u32).collect();
        let mut next = strands as u32 + 1;
        let mut crossings = Vec::new();
        for &g in word {
            let k = g.unsigned_abs() as usize;
            if g == 0 || k >= strands {
                return Err(DiagramError::MalformedToken(format!("braid generator {g}")));
            }
            let (left, right) = (current[k - 1], current[k]);
            let (new_left, new_right) = (next, next + 1);
            next += 2;
            let x = if g > 0 {
                // over: bottom-left -> top-right
                Crossing::new([right, new_right, new_left, left], Sign::Positive)
            } else {
                // over: bottom-right -> top-left
                Crossing::new([left, right, new_right, new_left], Sign::Negative)
            };
            crossings.push(x);
            current[k - 1] = new_left;
            current[k] = new_right;
        }
        // identify the top of each position with its bottom
        let mut alias: Vec<u32> = (0..next).collect();
        let mut free_loops = 0;
        for (p, &top) in current.iter().enumerate() {
            let bottom = p as u32 + 1;
            if top == bottom {
                free_loops += 1;
            } else {
                alias[top as usize] = bottom;
            }
        }
        let crossings = crossings
            .into_iter()
            .map(|x| x.relabeled(|a| alias[a as usize]))
            .collect();
        Diagram::from_labeled(crossings, free_loops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_closure() {
        let d = Diagram::braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert!(d.is_knot());
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn hopf_closure_is_two_components() {
        let d = Diagram::braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn idle_strand_is_a_free_loop() {
        let d = Diagram::braid_closure(3, &[1, 1, 1]).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.free_loops(), 1);
    }

    #[test]
    fn bad_generator() {
        assert!(Diagram::braid_closure(2, &[2]).is_err());
        assert!(Diagram::braid_closure(2, &[0]).is_err());
    }
}
