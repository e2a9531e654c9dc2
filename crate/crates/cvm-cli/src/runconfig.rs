//! Strict flat key-value run configuration with dotted sections.
//!
//! Any unrecognized key, duplicate key, or malformed value aborts before
//! anything is sampled. The resolved key-value map (after command-line
//! overrides) is the canonical form that gets hashed into the manifest.

use anyhow::{anyhow, bail, Context, Result};
use cvm::rational::Rational;
use cvm::{DensityVector, Graph, Params, SymmetricDensity, Topology};
use std::collections::BTreeMap;
use std::str::FromStr;

pub const KNOWN_KEYS: &[&str] = &[
    "model.f",
    "model.theta",
    "density.kind",
    "density.rho1",
    "density.rho2",
    "density.rho",
    "graph.topology",
    "graph.size",
    "run.stop",
    "run.t-max",
    "run.event-budget",
    "run.replicates",
    "run.seed",
    "observer.times",
    "observer.quantities",
    "output.dir",
];

/// Parse the flat `section.key = value` format (with `#` comments) into a
/// map, rejecting unknown and duplicate keys.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected `key = value`, got `{raw}`", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            bail!("line {}: unknown configuration key `{key}`", lineno + 1);
        }
        if map.insert(key.to_string(), value.to_string()).is_some() {
            bail!("line {}: duplicate configuration key `{key}`", lineno + 1);
        }
    }
    Ok(map)
}

/// Apply a `--set section.key=value` override.
pub fn apply_override(map: &mut BTreeMap<String, String>, spec: &str) -> Result<()> {
    let (key, value) = spec
        .split_once('=')
        .ok_or_else(|| anyhow!("override `{spec}` must look like section.key=value"))?;
    let key = key.trim();
    if !KNOWN_KEYS.contains(&key) {
        bail!("unknown configuration key `{key}` in override");
    }
    map.insert(key.to_string(), value.trim().to_string());
    Ok(())
}

/// Canonical text form of the resolved configuration: sorted `key = value`
/// lines. This is what the manifest records and hashes.
pub fn canonical_text(map: &BTreeMap<String, String>) -> String {
    let mut out = String::new();
    for (k, v) in map {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(v);
        out.push('\n');
    }
    out
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (
            i64::from_str(n.trim()).with_context(|| format!("bad numerator in `{s}`"))?,
            i64::from_str(d.trim()).with_context(|| format!("bad denominator in `{s}`"))?,
        ),
        None => (
            i64::from_str(s).with_context(|| format!("`{s}` is not an integer or p/q"))?,
            1,
        ),
    };
    if den == 0 {
        bail!("zero denominator in `{s}`");
    }
    Ok(cvm::rational::rat(num, den))
}

fn get<'a>(map: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str> {
    map.get(key)
        .map(String::as_str)
        .ok_or_else(|| anyhow!("missing required configuration key `{key}`"))
}

fn parse_from<T: FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let raw = get(map, key)?;
    raw.parse::<T>()
        .map_err(|e| anyhow!("key `{key}`: cannot parse `{raw}`: {e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopKind {
    Absorption,
    Consensus,
    Time,
    Events,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Counts,
    Edges,
}

/// Fully resolved and validated run configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub params: Params,
    pub density: DensityVector,
    pub topology: Topology,
    pub size: u32,
    pub stop: StopKind,
    pub t_max: Option<f64>,
    pub event_budget: Option<u64>,
    pub replicates: u64,
    pub seed: u64,
    pub observer_times: Vec<f64>,
    pub quantities: Vec<Quantity>,
    resolved: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn resolve(map: BTreeMap<String, String>) -> Result<RunConfig> {
        let f: u32 = parse_from(&map, "model.f")?;
        let theta: u32 = parse_from(&map, "model.theta")?;
        let params = Params::new(f, theta).map_err(|e| anyhow!("{e}"))?;

        let kind = map
            .get("density.kind")
            .map(String::as_str)
            .unwrap_or("uniform");
        let density = match kind {
            "uniform" => DensityVector::uniform(f),
            "symmetric" => {
                let rho2 = parse_rational(get(&map, "density.rho2")?)?;
                let sym = match map.get("density.rho1") {
                    Some(rho1) => SymmetricDensity::new(f, parse_rational(rho1)?, rho2),
                    None => SymmetricDensity::from_rho2(f, rho2),
                }
                .map_err(|e| anyhow!("{e}"))?;
                sym.to_density()
            }
            "explicit" => {
                let entries = get(&map, "density.rho")?
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?;
                if entries.len() != f as usize {
                    bail!(
                        "density.rho lists {} entries for F = {f}",
                        entries.len()
                    );
                }
                DensityVector::new(entries).map_err(|e| anyhow!("{e}"))?
            }
            other => bail!("density.kind must be uniform|symmetric|explicit, got `{other}`"),
        };

        let topology = match get(&map, "graph.topology")? {
            "cycle" => Topology::Cycle,
            "path" => Topology::Path,
            "complete" => Topology::Complete,
            other => bail!("graph.topology must be cycle|path|complete, got `{other}`"),
        };
        let size: u32 = parse_from(&map, "graph.size")?;
        // validate buildability now, before any run starts
        build_graph(topology, size)?;

        let stop = match get(&map, "run.stop")? {
            "absorption" => StopKind::Absorption,
            "consensus" => StopKind::Consensus,
            "time" => StopKind::Time,
            "events" => StopKind::Events,
            other => bail!("run.stop must be absorption|consensus|time|events, got `{other}`"),
        };
        let t_max: Option<f64> = match map.get("run.t-max") {
            Some(raw) => {
                let t: f64 = raw
                    .parse()
                    .map_err(|e| anyhow!("run.t-max: cannot parse `{raw}`: {e}"))?;
                if !(t.is_finite() && t >= 0.0) {
                    bail!("run.t-max must be finite and nonnegative");
                }
                Some(t)
            }
            None => None,
        };
        let event_budget: Option<u64> = match map.get("run.event-budget") {
            Some(raw) => Some(
                raw.parse()
                    .map_err(|e| anyhow!("run.event-budget: cannot parse `{raw}`: {e}"))?,
            ),
            None => None,
        };
        if stop == StopKind::Time && t_max.is_none() {
            bail!("run.stop = time requires run.t-max");
        }
        if stop == StopKind::Events && event_budget.is_none() {
            bail!("run.stop = events requires run.event-budget");
        }

        let replicates: u64 = parse_from(&map, "run.replicates")?;
        if replicates == 0 {
            bail!("run.replicates must be at least 1");
        }
        let seed: u64 = parse_from(&map, "run.seed").map_err(|_| {
            anyhow!("run.seed is mandatory (pass it in the config or with --seed); implicit time-based seeds are not supported")
        })?;

        let observer_times = match map.get("observer.times") {
            None => Vec::new(),
            Some(raw) if raw.trim() == "geometric" => {
                let horizon = t_max
                    .ok_or_else(|| anyhow!("observer.times = geometric requires run.t-max"))?;
                let mut times = vec![0.0];
                let mut t = 1.0;
                while t <= horizon {
                    times.push(t);
                    t *= 2.0;
                }
                times
            }
            Some(raw) => {
                let times = raw
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|e| anyhow!("observer.times: bad entry `{s}`: {e}"))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                if times.windows(2).any(|w| w[0] >= w[1]) {
                    bail!("observer.times must be strictly increasing");
                }
                if let (Some(t), Some(&last)) = (t_max, times.last()) {
                    if last > t {
                        bail!("observer.times exceed run.t-max");
                    }
                }
                times
            }
        };

        let quantities = match map.get("observer.quantities") {
            None => vec![Quantity::Counts, Quantity::Edges],
            Some(raw) => raw
                .split(',')
                .map(|s| match s.trim() {
                    "counts" => Ok(Quantity::Counts),
                    "edges" => Ok(Quantity::Edges),
                    other => Err(anyhow!(
                        "observer.quantities entries must be counts|edges, got `{other}`"
                    )),
                })
                .collect::<Result<Vec<_>>>()?,
        };

        Ok(RunConfig {
            params,
            density,
            topology,
            size,
            stop,
            t_max,
            event_budget,
            replicates,
            seed,
            observer_times,
            quantities,
            resolved: map,
        })
    }

    pub fn build_graph(&self) -> Result<Graph> {
        build_graph(self.topology, self.size)
    }

    pub fn canonical_text(&self) -> String {
        canonical_text(&self.resolved)
    }

    pub fn wants(&self, q: Quantity) -> bool {
        self.quantities.contains(&q)
    }
}

pub fn build_graph(topology: Topology, size: u32) -> Result<Graph> {
    let g = match topology {
        Topology::Cycle => Graph::cycle(size),
        Topology::Path => Graph::path(size),
        Topology::Complete => Graph::complete(size),
        Topology::Custom => bail!("custom topologies are not configurable from the CLI"),
    };
    g.map_err(|e| anyhow!("{e}"))
}
