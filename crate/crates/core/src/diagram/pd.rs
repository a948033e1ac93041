use std::collections::{BTreeSet, VecDeque};

use super::{Crossing, Diagram, DiagramError, Sign};

/// Parses PD text: an optional `components=k arcs=m` preamble followed by
/// `X[a,b,c,d]` tokens. A `PD[...]` wrapper and commas between tokens are
/// tolerated. Without a preamble an empty code is the unknot.
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    let mut body = text.trim();
    let mut declared: Option<(usize, u32)> = None;
    if body.starts_with("components=") {
        let (line, rest) = body.split_once('\n').unwrap_or((body, ""));
        declared = Some(parse_preamble(line)?);
        body = rest.trim();
    }
    if let Some(inner) = body.strip_prefix("PD[") {
        body = inner
            .trim_end()
            .strip_suffix(']')
            .ok_or_else(|| DiagramError::MalformedToken(body.to_string()))?;
    }
    let raw = tokenize(body)?
        .iter()
        .map(|t| parse_token(t))
        .collect::<Result<Vec<_>, _>>()?;

    let max = 2 * raw.len() as u32;
    if let Some((_, arcs)) = declared {
        if arcs != max {
            return Err(DiagramError::MalformedPreamble(format!(
                "arcs={arcs} but {} crossings need {max}",
                raw.len()
            )));
        }
    }
    let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); max as usize + 1];
    for (i, slots) in raw.iter().enumerate() {
        for (s, &a) in slots.iter().enumerate() {
            if a == 0 || a > max {
                return Err(DiagramError::ArcOutOfRange { arc: a, max });
            }
            occurrences[a as usize].push((i, s));
        }
    }
    if let Some(arc) = (1..=max).find(|a| occurrences[*a as usize].len() != 2) {
        return Err(DiagramError::ArcMultiplicity {
            arc,
            count: occurrences[arc as usize].len(),
        });
    }

    let signs = derive_signs(&raw, &occurrences)?;
    let crossings: Vec<Crossing> = raw
        .iter()
        .zip(&signs)
        .map(|(s, sign)| Crossing::new(*s, *sign))
        .collect();
    let traced = Diagram::new(crossings.clone(), 0)?;
    let free_loops = match declared {
        Some((k, _)) => {
            let found = traced.component_count();
            if k < found || (k == 0 && raw.is_empty()) {
                return Err(DiagramError::ComponentCount { declared: k, found });
            }
            k - found
        }
        None => usize::from(raw.is_empty()),
    };
    Diagram::new(crossings, free_loops)
}

fn parse_preamble(line: &str) -> Result<(usize, u32), DiagramError> {
    let bad = || DiagramError::MalformedPreamble(line.to_string());
    let mut comps = None;
    let mut arcs = None;
    for part in line.split_whitespace() {
        match part.split_once('=') {
            Some(("components", v)) => comps = Some(v.parse::<usize>().map_err(|_| bad())?),
            Some(("arcs", v)) => arcs = Some(v.parse::<u32>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    Ok((comps.ok_or_else(bad)?, arcs.ok_or_else(bad)?))
}

fn tokenize(body: &str) -> Result<Vec<String>, DiagramError> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in body.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                if depth == 0 {
                    return Err(DiagramError::MalformedToken(format!("{cur}]")));
                }
                depth -= 1;
                cur.push(ch);
            }
            c if depth == 0 && (c.is_whitespace() || c == ',') => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(DiagramError::MalformedToken(cur));
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    Ok(tokens)
}

fn parse_token(t: &str) -> Result<[u32; 4], DiagramError> {
    let bad = || DiagramError::MalformedToken(t.to_string());
    let inner = t
        .strip_prefix("X[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?;
    let nums: Vec<u32> = inner
        .split(',')
        .map(|s| {
            let s = s.trim();
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<u32>().map_err(|_| bad())
        })
        .collect::<Result<_, _>>()?;
    nums.try_into().map_err(|_| bad())
}

// Each arc is incoming at exactly one slot and outgoing at the other. Under
// slots are fixed (a in, c out); over slots are solved by propagation, with
// a label-successor tie-break for components that never pass under.
fn derive_signs(
    raw: &[[u32; 4]],
    occurrences: &[Vec<(usize, usize)>],
) -> Result<Vec<Sign>, DiagramError> {
    let n = raw.len();
    // Some(true) means the over-strand runs b -> d (negative crossing).
    let mut b_to_d: Vec<Option<bool>> = vec![None; n];

    let slot_is_in = |dirs: &[Option<bool>], x: usize, s: usize| -> Option<bool> {
        match s {
            0 => Some(true),
            2 => Some(false),
            1 => dirs[x],
            _ => dirs[x].map(|v| !v),
        }
    };

    let ranges = label_ranges(raw);
    let mut queue: VecDeque<usize> = VecDeque::new();
    loop {
        // propagate along arcs until stable
        let mut changed = true;
        while changed {
            changed = false;
            for arc in 1..occurrences.len() {
                let occ = &occurrences[arc];
                let (o1, o2) = (occ[0], occ[1]);
                let d1 = slot_is_in(&b_to_d, o1.0, o1.1);
                let d2 = slot_is_in(&b_to_d, o2.0, o2.1);
                match (d1, d2) {
                    (Some(a), Some(b)) if a == b => {
                        return Err(DiagramError::Orientation { arc: arc as u32 })
                    }
                    (Some(a), None) => {
                        set_dir(&mut b_to_d, o2, !a, arc)?;
                        changed = true;
                    }
                    (None, Some(b)) => {
                        set_dir(&mut b_to_d, o1, !b, arc)?;
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        queue.extend((0..n).filter(|i| b_to_d[*i].is_none()));
        let Some(x) = queue.pop_front() else { break };
        queue.clear();
        let [_, b, _, d] = raw[x];
        let (lo, hi) = ranges[x];
        let succ = |a: u32| if a == hi { lo } else { a + 1 };
        b_to_d[x] = Some(if succ(b) == d && succ(d) == b {
            b < d
        } else {
            succ(b) == d
        });
    }
    Ok(b_to_d
        .into_iter()
        .map(|v| {
            if v.unwrap() {
                Sign::Negative
            } else {
                Sign::Positive
            }
        })
        .collect())
}

fn set_dir(
    dirs: &mut [Option<bool>],
    (x, s): (usize, usize),
    is_in: bool,
    arc: usize,
) -> Result<(), DiagramError> {
    let v = match s {
        1 => is_in,
        3 => !is_in,
        _ => return Err(DiagramError::Orientation { arc: arc as u32 }),
    };
    match dirs[x] {
        Some(old) if old != v => Err(DiagramError::Orientation { arc: arc as u32 }),
        _ => {
            dirs[x] = Some(v);
            Ok(())
        }
    }
}

// Label range of the (undirected) component through each crossing's
// over-strand.
fn label_ranges(raw: &[[u32; 4]]) -> Vec<(u32, u32)> {
    let max = 2 * raw.len() as u32;
    let mut parent: Vec<u32> = (0..=max).collect();
    fn find(p: &mut [u32], a: u32) -> u32 {
        let mut r = a;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        p[a as usize] = r;
        r
    }
    for s in raw {
        for (u, v) in [(s[0], s[2]), (s[1], s[3])] {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru.max(rv) as usize] = ru.min(rv);
        }
    }
    let mut members: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); max as usize + 1];
    for a in 1..=max {
        let r = find(&mut parent, a);
        members[r as usize].insert(a);
    }
    raw.iter()
        .map(|s| {
            let r = find(&mut parent, s[1]);
            let m = &members[r as usize];
            (*m.first().unwrap(), *m.last().unwrap())
        })
        .collect()
}

/// PD text for a diagram. Arcs are relabeled consecutively along components;
/// a preamble is written whenever free loops are present.
pub fn serialize_pd(d: &Diagram) -> String {
    let d = d.relabel_canonical();
    let body: Vec<String> = d
        .crossings()
        .iter()
        .map(|x| {
            let [a, b, c, e] = x.slots();
            format!("X[{a},{b},{c},{e}]")
        })
        .collect();
    let body = body.join(" ");
    let needs_preamble = d.free_loops() > 0 && !(d.crossing_count() == 0 && d.free_loops() == 1);
    if needs_preamble {
        format!(
            "components={} arcs={}\n{}",
            d.component_count(),
            d.arc_count(),
            body
        )
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_unknot() {
        let d = parse_pd("").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
        assert_eq!(serialize_pd(&d), "");
    }

    #[test]
    fn preamble_declares_unlink() {
        let d = parse_pd("components=2 arcs=0\n").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(parse_pd(&serialize_pd(&d)).unwrap().component_count(), 2);
    }

    #[test]
    fn trefoil() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert!(d.crossings().iter().all(|x| x.sign() == Sign::Negative));
    }

    #[test]
    fn knot_atlas_wrapper_with_commas() {
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(d.crossing_count(), 3);
    }

    #[test]
    fn kink() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossings()[0].sign(), Sign::Positive);
        let other = parse_pd("X[2,1,1,2]").unwrap();
        assert_eq!(other.component_count(), 1);
        assert_eq!(other.crossings()[0].sign(), Sign::Negative);
    }

    #[test]
    fn error_kinds_are_distinguishable() {
        assert!(matches!(
            parse_pd("X[1,2,3]"),
            Err(DiagramError::MalformedToken(_))
        ));
        assert!(matches!(
            parse_pd("Y[1,2,3,4]"),
            Err(DiagramError::MalformedToken(_))
        ));
        assert!(matches!(
            parse_pd("X[1,1,1,2]"),
            Err(DiagramError::ArcMultiplicity { arc: 1, count: 3 })
        ));
        assert!(matches!(
            parse_pd("X[1,2,3,4]"),
            Err(DiagramError::ArcOutOfRange { .. })
        ));
        // arc 1 enters as under-strand at both crossings
        assert!(matches!(
            parse_pd("X[1,3,2,4] X[1,4,2,3]"),
            Err(DiagramError::Orientation { .. })
        ));
        assert!(matches!(
            parse_pd("components=x arcs=0\n"),
            Err(DiagramError::MalformedPreamble(_))
        ));
    }

    #[test]
    fn over_only_component_round_trips() {
        // component {3,4} never passes under; only orientation recovery is
        // checked here, not planarity
        let d = parse_pd("X[1,4,2,3] X[2,3,1,4]").unwrap();
        assert_eq!(d.component_count(), 2);
        let again = parse_pd(&serialize_pd(&d)).unwrap();
        assert_eq!(again, d);
        let signs: Vec<_> = again.crossings().iter().map(|x| x.sign()).collect();
        let orig: Vec<_> = d
            .relabel_canonical()
            .crossings()
            .iter()
            .map(|x| x.sign())
            .collect();
        assert_eq!(signs, orig);
    }
}
