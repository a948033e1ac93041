//! Detour families and alternating sums over taken/untaken detours.
//!
//! A family is a cyclic host word of crossing passes with sockets. Each
//! socket holds a switch region with two alternative pass sequences. A
//! resolution picks one route per region; a crossing is present exactly when
//! both of its passes are present, so crossings between two detours exist
//! only when both detours are taken.

mod encode;
mod format;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, GaussCode, Pass};
use crate::exact_math::rat;
use crate::formal_sum::{FormalSum, Generator};
use crate::invariants::{Invariant, InvariantError, Value};
use crate::vassiliev::{CaseOutcome, TypeCheckReport};

pub use encode::{
    double_twist_family, double_twist_knot, encode_crossing_as_detours, encode_crossings,
    encode_singular_as_bracelet, theorem1_identity_check, IdentityCheck,
};

/// Families with more regions are rejected; every one of the `2^m`
/// resolutions is validated eagerly.
pub const MAX_REGIONS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetourError {
    #[error("malformed family: {0}")]
    Parse(String),
    #[error("socket {socket} appears {count} times in the host")]
    SocketCount { socket: usize, count: usize },
    #[error("socket {0} has no region")]
    SocketRange(usize),
    #[error("resolution {subset:?} is not a knot diagram: {source}")]
    Resolution {
        subset: Vec<usize>,
        source: DiagramError,
    },
    #[error("region {index} out of bounds for {count} regions")]
    RegionIndex { index: usize, count: usize },
    #[error("{0} regions exceed the limit of {MAX_REGIONS}")]
    TooManyRegions(usize),
    #[error("host must be a knot, got {0} components")]
    NotAKnot(usize),
    #[error("family {case} has {found} regions, expected {expected}")]
    RegionCount {
        case: usize,
        found: usize,
        expected: usize,
    },
    #[error("host segment {start}..{end} is not a run of passes")]
    Segment { start: usize, end: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HostToken {
    Pass(Pass),
    Socket(usize),
}

/// Two alternative pass sequences for one stretch of the knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchRegion {
    pub route0: Vec<Pass>,
    pub route1: Vec<Pass>,
}

impl SwitchRegion {
    pub fn new(route0: Vec<Pass>, route1: Vec<Pass>) -> Self {
        SwitchRegion { route0, route1 }
    }

    pub fn route(&self, taken: bool) -> &[Pass] {
        if taken {
            &self.route1
        } else {
            &self.route0
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.route0 == self.route1
    }
}

#[derive(Debug, Clone)]
pub struct DetourFamily {
    host: Vec<HostToken>,
    regions: Vec<SwitchRegion>,
}

impl DetourFamily {
    /// Checks the sockets and validates all resolutions.
    pub fn new(host: Vec<HostToken>, regions: Vec<SwitchRegion>) -> Result<Self, DetourError> {
        let m = regions.len();
        if m > MAX_REGIONS {
            return Err(DetourError::TooManyRegions(m));
        }
        let mut counts = vec![0usize; m];
        for t in &host {
            if let HostToken::Socket(k) = t {
                *counts.get_mut(*k).ok_or(DetourError::SocketRange(*k))? += 1;
            }
        }
        if let Some((socket, &count)) = counts.iter().enumerate().find(|(_, c)| **c != 1) {
            return Err(DetourError::SocketCount { socket, count });
        }
        let f = DetourFamily { host, regions };
        for mask in 0u64..(1u64 << m) {
            let taken: Vec<bool> = (0..m).map(|r| mask >> r & 1 == 1).collect();
            close(f.assemble(&taken)).map_err(|source| DetourError::Resolution {
                subset: subset_of(&taken),
                source,
            })?;
        }
        Ok(f)
    }

    /// The family without regions whose only resolution is `k`.
    pub fn from_knot(k: &Diagram) -> Result<Self, DetourError> {
        if !k.is_knot() {
            return Err(DetourError::NotAKnot(k.component_count()));
        }
        let g = k.to_gauss()?;
        let host = g.components().first().cloned().unwrap_or_default();
        DetourFamily::new(host.into_iter().map(HostToken::Pass).collect(), Vec::new())
    }

    pub fn host(&self) -> &[HostToken] {
        &self.host
    }

    pub fn regions(&self) -> &[SwitchRegion] {
        &self.regions
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    fn check_region(&self, r: usize) -> Result<(), DetourError> {
        if r < self.regions.len() {
            Ok(())
        } else {
            Err(DetourError::RegionIndex {
                index: r,
                count: self.regions.len(),
            })
        }
    }

    fn assemble(&self, taken: &[bool]) -> Vec<Pass> {
        let mut word = Vec::new();
        for t in &self.host {
            match t {
                HostToken::Pass(p) => word.push(*p),
                HostToken::Socket(k) => word.extend_from_slice(self.regions[*k].route(taken[*k])),
            }
        }
        word
    }

    /// Resolution with the detours of the regions in `subset` taken.
    pub fn resolve(&self, subset: &[usize]) -> Result<Diagram, DetourError> {
        let mut taken = vec![false; self.regions.len()];
        for &r in subset {
            self.check_region(r)?;
            taken[r] = true;
        }
        close(self.assemble(&taken)).map_err(|source| DetourError::Resolution {
            subset: subset.to_vec(),
            source,
        })
    }

    /// Same as [`resolve`](Self::resolve), splicing one region at a time in
    /// the given order (a permutation of all regions).
    pub fn resolve_spliced(
        &self,
        subset: &[usize],
        order: &[usize],
    ) -> Result<Diagram, DetourError> {
        for &r in subset.iter().chain(order) {
            self.check_region(r)?;
        }
        let mut tokens = self.host.clone();
        for &r in order {
            let route = self.regions[r].route(subset.contains(&r));
            tokens = tokens
                .into_iter()
                .flat_map(|t| match t {
                    HostToken::Socket(k) if k == r => {
                        route.iter().map(|p| HostToken::Pass(*p)).collect()
                    }
                    other => vec![other],
                })
                .collect();
        }
        let word: Vec<Pass> = tokens
            .into_iter()
            .map(|t| match t {
                HostToken::Pass(p) => Ok(p),
                HostToken::Socket(k) => Err(DetourError::SocketRange(k)),
            })
            .collect::<Result<_, _>>()?;
        close(word).map_err(|source| DetourError::Resolution {
            subset: subset.to_vec(),
            source,
        })
    }

    /// Replaces region `r` by one of its routes. Passes whose partner can no
    /// longer occur are removed.
    pub fn freeze(&self, r: usize, taken: bool) -> Result<DetourFamily, DetourError> {
        self.check_region(r)?;
        let route = self.regions[r].route(taken);
        let mut host = Vec::new();
        for t in &self.host {
            match *t {
                HostToken::Socket(k) if k == r => {
                    host.extend(route.iter().map(|p| HostToken::Pass(*p)))
                }
                HostToken::Socket(k) if k > r => host.push(HostToken::Socket(k - 1)),
                other => host.push(other),
            }
        }
        let mut regions = self.regions.clone();
        regions.remove(r);
        let (host, regions) = prune(host, regions);
        DetourFamily::new(host, regions)
    }

    /// Moves the host passes `start..end` into a new last region whose two
    /// routes are both that segment.
    pub fn with_trivial_region(
        &self,
        start: usize,
        end: usize,
    ) -> Result<DetourFamily, DetourError> {
        let segment: Option<Vec<Pass>> = self.host.get(start..end).and_then(|s| {
            s.iter()
                .map(|t| match t {
                    HostToken::Pass(p) => Some(*p),
                    HostToken::Socket(_) => None,
                })
                .collect()
        });
        let segment = segment.ok_or(DetourError::Segment { start, end })?;
        let mut host = self.host[..start].to_vec();
        host.push(HostToken::Socket(self.regions.len()));
        host.extend_from_slice(&self.host[end..]);
        let mut regions = self.regions.clone();
        regions.push(SwitchRegion::new(segment.clone(), segment));
        DetourFamily::new(host, regions)
    }

    /// Text key identifying families up to rotation of the host and renaming
    /// of crossing ids.
    pub fn canonical_key(&self) -> String {
        let n = self.host.len().max(1);
        (0..n)
            .map(|rot| {
                let mut names: BTreeMap<usize, usize> = BTreeMap::new();
                let mut name = |p: &Pass| {
                    let next = names.len();
                    let id = *names.entry(p.crossing).or_insert(next);
                    format!(
                        "{}{}{}",
                        if p.over { 'O' } else { 'U' },
                        id,
                        p.sign.symbol()
                    )
                };
                let mut s = String::new();
                for t in self.host.iter().cycle().skip(rot).take(self.host.len()) {
                    match t {
                        HostToken::Pass(p) => s.push_str(&name(p)),
                        HostToken::Socket(k) => s.push_str(&format!("S{k}")),
                    }
                }
                for r in &self.regions {
                    s.push('|');
                    s.extend(r.route0.iter().map(&mut name));
                    s.push(';');
                    s.extend(r.route1.iter().map(&mut name));
                }
                s
            })
            .min()
            .unwrap_or_default()
    }
}

impl PartialEq for DetourFamily {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for DetourFamily {}

impl Generator for DetourFamily {
    fn canonical_key(&self) -> String {
        DetourFamily::canonical_key(self)
    }
}

impl fmt::Display for DetourFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

fn subset_of(taken: &[bool]) -> Vec<usize> {
    taken
        .iter()
        .enumerate()
        .filter(|(_, t)| **t)
        .map(|(r, _)| r)
        .collect()
}

/// Keeps crossings with both passes present and builds the knot diagram.
fn close(word: Vec<Pass>) -> Result<Diagram, DiagramError> {
    let mut seen: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for p in &word {
        let e = seen.entry(p.crossing).or_default();
        if p.over {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    if let Some((id, _)) = seen.iter().find(|(_, (o, u))| *o > 1 || *u > 1) {
        return Err(DiagramError::GaussCount(*id));
    }
    let kept = word
        .into_iter()
        .filter(|p| seen[&p.crossing] == (1, 1))
        .collect();
    GaussCode::knot(kept).to_diagram()
}

/// Removes passes whose crossing id occurs only once in the whole family.
fn prune(host: Vec<HostToken>, regions: Vec<SwitchRegion>) -> (Vec<HostToken>, Vec<SwitchRegion>) {
    let mut kinds: BTreeMap<usize, (bool, bool)> = BTreeMap::new();
    let host_passes = host.iter().filter_map(|t| match t {
        HostToken::Pass(p) => Some(p),
        HostToken::Socket(_) => None,
    });
    let route_passes = regions
        .iter()
        .flat_map(|r| r.route0.iter().chain(&r.route1));
    for p in host_passes.chain(route_passes) {
        let e = kinds.entry(p.crossing).or_default();
        if p.over {
            e.0 = true;
        } else {
            e.1 = true;
        }
    }
    let live = |p: &Pass| kinds[&p.crossing] == (true, true);
    let host = host
        .iter()
        .filter(|t| match t {
            HostToken::Pass(p) => live(p),
            HostToken::Socket(_) => true,
        })
        .copied()
        .collect();
    let regions = regions
        .iter()
        .map(|r| {
            SwitchRegion::new(
                r.route0.iter().copied().filter(|p| live(p)).collect(),
                r.route1.iter().copied().filter(|p| live(p)).collect(),
            )
        })
        .collect();
    (host, regions)
}

/// Route-1 freeze minus route-0 freeze of region `r`.
pub fn delta_g(f: &DetourFamily, r: usize) -> Result<FormalSum<DetourFamily>, DetourError> {
    let mut out = FormalSum::single(f.freeze(r, true)?);
    out.add_term(f.freeze(r, false)?, rat(-1));
    Ok(out)
}

/// Applies `delta_g` to every region, in the given order of original region
/// indices, leaving a sum of region-free families.
pub fn delta_g_all(
    f: &DetourFamily,
    order: &[usize],
) -> Result<FormalSum<DetourFamily>, DetourError> {
    let mut acc = FormalSum::single(f.clone());
    let mut done: Vec<usize> = Vec::new();
    for &r in order {
        f.check_region(r)?;
        let shifted = r - done.iter().filter(|d| **d < r).count();
        let mut next = FormalSum::zero();
        for (g, c) in acc.terms() {
            next.add_scaled(&delta_g(g, shifted)?, c);
        }
        acc = next;
        done.push(r);
    }
    Ok(acc)
}

/// Evaluates an invariant linearly on a sum of families without regions.
pub fn evaluate_resolved(
    s: &FormalSum<DetourFamily>,
    inv: Invariant,
) -> Result<Value, DetourError> {
    let mut acc = inv.zero();
    for (g, c) in s.terms() {
        if g.region_count() != 0 {
            return Err(DetourError::RegionCount {
                case: 0,
                found: g.region_count(),
                expected: 0,
            });
        }
        acc = acc.add_scaled(&inv.evaluate(&g.resolve(&[])?)?, c)?;
    }
    Ok(acc)
}

/// `sum over S of (-1)^|S| I(resolve(F, S))`.
pub fn goussarov_difference(f: &DetourFamily, inv: Invariant) -> Result<Value, DetourError> {
    let m = f.region_count();
    let mut acc = inv.zero();
    for mask in 0u64..(1u64 << m) {
        let subset: Vec<usize> = (0..m).filter(|r| mask >> r & 1 == 1).collect();
        let sign = if subset.len() % 2 == 0 {
            rat(1)
        } else {
            rat(-1)
        };
        acc = acc.add_scaled(&inv.evaluate(&f.resolve(&subset)?)?, &sign)?;
    }
    Ok(acc)
}

/// Checks that the alternating sum vanishes on every family, each of which
/// must have `n + 1` regions.
pub fn goussarov_type_check(
    inv: Invariant,
    n: usize,
    corpus: &[DetourFamily],
) -> Result<TypeCheckReport, DetourError> {
    let mut cases = Vec::new();
    for (idx, f) in corpus.iter().enumerate() {
        if f.region_count() != n + 1 {
            return Err(DetourError::RegionCount {
                case: idx,
                found: f.region_count(),
                expected: n + 1,
            });
        }
        cases.push(CaseOutcome {
            label: format!("family {idx}"),
            value: goussarov_difference(f, inv)?,
        });
    }
    Ok(TypeCheckReport {
        invariant: inv,
        degree: n,
        cases,
    })
}
