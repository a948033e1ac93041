use serde::{Deserialize, Serialize};

use super::{DetourError, DetourFamily, HostToken, SwitchRegion};
use crate::diagram::{parse_passes, Pass};

#[derive(Serialize, Deserialize)]
struct RegionText {
    route0: String,
    route1: String,
}

#[derive(Serialize, Deserialize)]
struct FamilyText {
    host: String,
    regions: Vec<RegionText>,
}

fn passes_text(passes: &[Pass]) -> String {
    passes
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Host words are pass tokens and sockets `S1..Sm`, whitespace optional.
fn parse_host(text: &str) -> Result<Vec<HostToken>, DetourError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(tail) = rest.strip_prefix('S') {
            let end = tail
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(tail.len());
            let k: usize = tail[..end]
                .parse()
                .map_err(|_| DetourError::Parse(format!("bad socket near {rest:.12}")))?;
            if k == 0 {
                return Err(DetourError::Parse("sockets are numbered from 1".into()));
            }
            out.push(HostToken::Socket(k - 1));
            rest = tail[end..].trim_start();
        } else {
            let end = rest.find('S').unwrap_or(rest.len());
            out.extend(parse_passes(&rest[..end])?.into_iter().map(HostToken::Pass));
            rest = &rest[end..];
        }
    }
    Ok(out)
}

impl DetourFamily {
    /// JSON text: `{"host": "S1 O0- U1-...", "regions": [{"route0": "...",
    /// "route1": "..."}]}`. Sockets are numbered from 1.
    pub fn to_json(&self) -> String {
        let host = self
            .host
            .iter()
            .map(|t| match t {
                HostToken::Pass(p) => p.to_string(),
                HostToken::Socket(k) => format!("S{}", k + 1),
            })
            .collect::<Vec<_>>()
            .join(" ");
        let text = FamilyText {
            host,
            regions: self
                .regions
                .iter()
                .map(|r| RegionText {
                    route0: passes_text(&r.route0),
                    route1: passes_text(&r.route1),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&text).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DetourError> {
        let t: FamilyText =
            serde_json::from_str(text).map_err(|e| DetourError::Parse(e.to_string()))?;
        if t.host.contains('|') {
            return Err(DetourError::NotAKnot(t.host.split('|').count()));
        }
        let host = parse_host(&t.host)?;
        let regions = t
            .regions
            .iter()
            .map(|r| {
                Ok(SwitchRegion::new(
                    parse_passes(&r.route0)?,
                    parse_passes(&r.route1)?,
                ))
            })
            .collect::<Result<Vec<_>, DetourError>>()?;
        DetourFamily::new(host, regions)
    }
}
