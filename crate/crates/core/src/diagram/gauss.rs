use std::collections::BTreeMap;
use std::fmt;

use super::{Crossing, Diagram, DiagramError, Sign};

/// One passage through a crossing while traversing a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pass {
    pub crossing: usize,
    pub over: bool,
    pub sign: Sign,
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            if self.over { 'O' } else { 'U' },
            self.crossing,
            self.sign.symbol()
        )
    }
}

/// Signed Gauss code, one cyclic pass sequence per component. Empty
/// components are crossingless loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussCode {
    components: Vec<Vec<Pass>>,
}

impl GaussCode {
    pub fn new(components: Vec<Vec<Pass>>) -> Self {
        GaussCode { components }
    }

    pub fn knot(passes: Vec<Pass>) -> Self {
        GaussCode {
            components: vec![passes],
        }
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    /// Parses a knot code such as `O1+U2+O3+U1+O2+U3+`. Whitespace is
    /// ignored; the empty code is the unknot.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let code = GaussCode::knot(parse_passes(text)?);
        code.validate()?;
        Ok(code)
    }

    /// Parses a link code with components separated by `|`; an empty
    /// component is a crossingless loop.
    pub fn parse_link(text: &str) -> Result<Self, DiagramError> {
        let components = text
            .split('|')
            .map(parse_passes)
            .collect::<Result<Vec<_>, _>>()?;
        let code = GaussCode::new(components);
        code.validate()?;
        Ok(code)
    }

    /// Every crossing id occurs once over and once under with one sign.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut seen: BTreeMap<usize, (usize, usize, Sign)> = BTreeMap::new();
        for p in self.components.iter().flatten() {
            let e = seen.entry(p.crossing).or_insert((0, 0, p.sign));
            if e.2 != p.sign {
                return Err(DiagramError::GaussSignMismatch(p.crossing));
            }
            if p.over {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        match seen.iter().find(|(_, (o, u, _))| *o != 1 || *u != 1) {
            Some((id, _)) => Err(DiagramError::GaussCount(*id)),
            None => Ok(()),
        }
    }

    /// Builds the PD diagram. Crossings are ordered by ascending id; arcs are
    /// numbered along the components in order.
    pub fn to_diagram(&self) -> Result<Diagram, DiagramError> {
        self.validate()?;
        let ids: Vec<usize> = {
            let mut v: Vec<usize> = self
                .components
                .iter()
                .flatten()
                .map(|p| p.crossing)
                .collect();
            v.sort();
            v.dedup();
            v
        };
        let index: BTreeMap<usize, usize> =
            ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        // (under_in, under_out, over_in, over_out, sign)
        let mut ends = vec![[0u32; 4]; ids.len()];
        let mut signs = vec![Sign::Positive; ids.len()];
        let mut next = 1u32;
        let mut free_loops = 0;
        for comp in &self.components {
            if comp.is_empty() {
                free_loops += 1;
                continue;
            }
            let base = next;
            let k = comp.len() as u32;
            for (j, p) in comp.iter().enumerate() {
                let j = j as u32;
                let outgoing = base + j;
                let incoming = base + (j + k - 1) % k;
                let x = index[&p.crossing];
                signs[x] = p.sign;
                if p.over {
                    ends[x][2] = incoming;
                    ends[x][3] = outgoing;
                } else {
                    ends[x][0] = incoming;
                    ends[x][1] = outgoing;
                }
            }
            next += k;
        }
        let crossings = ends
            .iter()
            .zip(&signs)
            .map(|([ui, uo, oi, oo], s)| match s {
                Sign::Positive => Crossing::new([*ui, *oo, *uo, *oi], *s),
                Sign::Negative => Crossing::new([*ui, *oi, *uo, *oo], *s),
            })
            .collect();
        Diagram::new(crossings, free_loops)
    }

    /// Traverses each component from its smallest arc; crossing ids are
    /// crossing indices.
    pub fn from_diagram(d: &Diagram) -> Result<Self, DiagramError> {
        let mut head: BTreeMap<u32, (usize, bool)> = BTreeMap::new();
        for (i, x) in d.crossings().iter().enumerate() {
            head.insert(x.under_in(), (i, false));
            head.insert(x.over_in(), (i, true));
        }
        let mut components: Vec<Vec<Pass>> = d
            .component_arcs()
            .iter()
            .map(|arcs| {
                arcs.iter()
                    .map(|a| {
                        let (i, over) = head[a];
                        Pass {
                            crossing: i,
                            over,
                            sign: d.crossings()[i].sign(),
                        }
                    })
                    .collect()
            })
            .collect();
        components.extend(std::iter::repeat_with(Vec::new).take(d.free_loops()));
        Ok(GaussCode { components })
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| c.iter().map(|p| p.to_string()).collect::<String>())
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

pub(crate) fn parse_passes(text: &str) -> Result<Vec<Pass>, DiagramError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut passes = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let start = i;
        let over = match chars[i] {
            'O' => true,
            'U' => false,
            _ => return Err(malformed(&chars[start..])),
        };
        i += 1;
        let digits_start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if i == digits_start || i >= chars.len() {
            return Err(malformed(&chars[start..]));
        }
        let crossing: usize = chars[digits_start..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| malformed(&chars[start..i]))?;
        let sign = match chars[i] {
            '+' => Sign::Positive,
            '-' => Sign::Negative,
            _ => return Err(malformed(&chars[start..=i])),
        };
        i += 1;
        passes.push(Pass {
            crossing,
            over,
            sign,
        });
    }
    Ok(passes)
}

fn malformed(chars: &[char]) -> DiagramError {
    DiagramError::MalformedToken(chars.iter().take(12).collect())
}

/// Parses a signed Gauss code into a knot diagram.
pub fn parse_gauss(text: &str) -> Result<Diagram, DiagramError> {
    GaussCode::parse(text)?.to_diagram()
}
