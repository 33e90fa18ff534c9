//! Drivers for the `norm`, `decompose`, `atoms`, `sweep` and `oracle`
//! subcommands. Each returns its result and writes any files it owns.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use herzlab::atoms::{
    atom_make, atom_validate, atomic_sum_check, dilate_phi, Atom, AtomKind, AtomReport,
    AtomicSumReport, Mollifier,
};
use herzlab::grandseq::Sequence;
use herzlab::grid::{GridFunction, GridGeometry};
use herzlab::herz::{
    block_decompose, grand_herz_norm, herz_morrey_norm, seq_functional, HerzNorm, HerzSpaceParams,
};
use herzlab::operators::{boundedness_sweep, LambdaRule, OperatorSpec, SweepTable, TestFamily};
use herzlab::oracle::{self, ConstantHerzCase};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::SuiteConfig;
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Herz,
    HerzMorrey,
    NonHomogeneous,
}

impl std::str::FromStr for Space {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "herz" => Ok(Space::Herz),
            "herz-morrey" => Ok(Space::HerzMorrey),
            "nonhomog" => Ok(Space::NonHomogeneous),
            _ => Err(CliError::Config(format!("unknown space `{s}`"))),
        }
    }
}

pub fn read_function(path: &Path) -> Result<GridFunction> {
    let file = File::open(path)
        .map_err(|e| CliError::Config(format!("cannot open {}: {e}", path.display())))?;
    Ok(GridFunction::read_csv(BufReader::new(file))?)
}

pub fn write_function(path: &Path, f: &GridFunction) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// The configured dilation on the grid `f` lives on.
fn geometry_for(cfg: &SuiteConfig, f: &GridFunction) -> Result<GridGeometry> {
    let d = cfg.dilation()?;
    if d.dim() != f.grid().dim() {
        return Err(CliError::Config(format!(
            "input is {}-dimensional but the dilation is {}-dimensional",
            f.grid().dim(),
            d.dim()
        )));
    }
    Ok(GridGeometry::new(&d, *f.grid())?)
}

pub fn norm(cfg: &SuiteConfig, space: Space, input: &Path) -> Result<HerzNorm> {
    let f = read_function(input)?;
    let geo = geometry_for(cfg, &f)?;
    let params = cfg.herz.params()?;
    Ok(match space {
        Space::Herz => grand_herz_norm(&f, &geo, &params)?,
        Space::HerzMorrey => herz_morrey_norm(&f, &geo, &params)?,
        Space::NonHomogeneous => grand_herz_norm(&f, &geo, &params.non_homogeneous())?,
    })
}

pub fn norm_csv(n: &HerzNorm) -> String {
    let mut s = String::from("k,term\n");
    for (k, t) in &n.per_k_terms {
        s.push_str(&format!("{k},{t:e}\n"));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub k: i32,
    pub coefficient: f64,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionManifest {
    pub params: HerzSpaceParams,
    /// `λ_k` over the truncation range, zeros included.
    pub coefficients: Sequence,
    pub norm: f64,
    pub seq_functional: f64,
    pub blocks: Vec<BlockEntry>,
}

/// Blocks as `block_k<k>.csv` plus `manifest.json` in `dir`.
pub fn decompose(cfg: &SuiteConfig, input: &Path, dir: &Path) -> Result<DecompositionManifest> {
    let f = read_function(input)?;
    let geo = geometry_for(cfg, &f)?;
    let params = cfg.herz.params()?;
    let dec = block_decompose(&f, &geo, &params)?;
    std::fs::create_dir_all(dir)?;
    let mut blocks = Vec::with_capacity(dec.blocks.len());
    for b in &dec.blocks {
        let file = format!("block_k{}.csv", b.k);
        write_function(&dir.join(&file), &b.data)?;
        blocks.push(BlockEntry {
            k: b.k,
            coefficient: b.coefficient,
            file,
        });
    }
    let manifest = DecompositionManifest {
        norm: grand_herz_norm(&f, &geo, &params)?.norm,
        seq_functional: seq_functional(&dec)?,
        coefficients: dec.coefficients,
        params,
        blocks,
    };
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomManifest {
    pub kind: AtomKind,
    pub k: i32,
    pub s: u32,
    pub params: HerzSpaceParams,
    /// CSV with the samples, relative to the manifest.
    pub file: String,
    pub norm: f64,
    pub bound: f64,
    /// Largest `|moment| / tolerance` over the checked multi-indices.
    pub moment_residual: f64,
    pub pass: bool,
}

pub fn parse_kind(text: &str) -> Result<AtomKind> {
    match text {
        "haar" => Ok(AtomKind::Haar),
        "bump" | "bump_corrected" => Ok(AtomKind::BumpCorrected),
        _ => Err(CliError::Config(format!("unknown atom kind `{text}`"))),
    }
}

fn kind_name(kind: AtomKind) -> &'static str {
    match kind {
        AtomKind::Haar => "haar",
        AtomKind::BumpCorrected => "bump",
    }
}

fn moment_residual(r: &AtomReport) -> f64 {
    r.moments
        .iter()
        .map(|m| {
            if m.tolerance > 0.0 {
                m.value.abs() / m.tolerance
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max)
}

/// Build an atom on the configured grid; writes `<stem>.csv` and `<stem>.json`.
pub fn atoms_make(
    cfg: &SuiteConfig,
    kind: AtomKind,
    k: i32,
    s: u32,
    dir: &Path,
) -> Result<(PathBuf, AtomManifest)> {
    let geo = cfg.geometry()?;
    let params = cfg.herz.params()?;
    let atom = atom_make(kind, k, s, &geo, &params)?;
    let report = atom_validate(&atom.data, k, &geo, &params, s, false)?;
    std::fs::create_dir_all(dir)?;
    let stem = format!("atom_{}_k{k}_s{s}", kind_name(kind));
    let file = format!("{stem}.csv");
    write_function(&dir.join(&file), &atom.data)?;
    let manifest = AtomManifest {
        kind,
        k,
        s,
        params,
        file,
        norm: report.norm,
        bound: report.bound,
        moment_residual: moment_residual(&report),
        pass: report.pass,
    };
    let path = dir.join(format!("{stem}.json"));
    write_json(&path, &manifest)?;
    Ok((path, manifest))
}

fn load_atom(cfg: &SuiteConfig, manifest_path: &Path) -> Result<(Atom, GridGeometry)> {
    let m: AtomManifest = read_json(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let data = read_function(&base.join(&m.file))?;
    let geo = geometry_for(cfg, &data)?;
    Ok((
        Atom {
            data,
            k: m.k,
            s: m.s,
            kind: m.kind,
            params: m.params,
        },
        geo,
    ))
}

pub fn atoms_validate(cfg: &SuiteConfig, manifest: &Path, restricted: bool) -> Result<AtomReport> {
    let (atom, geo) = load_atom(cfg, manifest)?;
    Ok(atom_validate(
        &atom.data,
        atom.k,
        &geo,
        &atom.params,
        atom.s,
        restricted,
    )?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumEntry {
    /// Atom manifest, relative to the sum manifest.
    pub atom: String,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumManifest {
    pub atoms: Vec<SumEntry>,
    #[serde(default)]
    pub krange: Option<(i32, i32)>,
}

/// `‖M_φ(Σ λ_i a_i)‖ / ‖λ‖` for the atoms listed in a sum manifest, measured
/// in the space of the first atom.
pub fn atoms_sumcheck(cfg: &SuiteConfig, manifest: &Path) -> Result<AtomicSumReport> {
    let m: SumManifest = read_json(manifest)?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let mut atoms = Vec::with_capacity(m.atoms.len());
    let mut lambdas = Vec::with_capacity(m.atoms.len());
    let mut geo = None;
    for e in &m.atoms {
        let (atom, g) = load_atom(cfg, &base.join(&e.atom))?;
        if geo
            .as_ref()
            .is_some_and(|prev: &GridGeometry| prev.grid() != g.grid())
        {
            return Err(CliError::Config("atoms live on different grids".into()));
        }
        geo.get_or_insert(g);
        atoms.push(atom);
        lambdas.push(e.lambda);
    }
    let geo = geo.ok_or_else(|| CliError::Config("sum manifest lists no atoms".into()))?;
    let params = atoms[0].params.clone();
    let phi = Mollifier::new(&geo)?;
    let krange = m.krange.unwrap_or_else(|| resolved_krange(&phi, &geo));
    Ok(atomic_sum_check(
        &atoms, &lambdas, &geo, &params, &phi, krange,
    )?)
}

/// The default truncation range, raised to the first scale at which the
/// dilated mollifier is resolved by the grid.
pub fn resolved_krange(phi: &Mollifier, geo: &GridGeometry) -> (i32, i32) {
    let (mut lo, hi) = geo.default_krange();
    while lo < hi && dilate_phi(phi, geo, lo).is_err() {
        lo += 1;
    }
    (lo, hi)
}

/// `scales=N` (N members per resolved scale), `size=N`, `seed=S`, comma separated.
pub fn parse_family(text: &str, seed: u64, geo: &GridGeometry) -> Result<TestFamily> {
    let mut family = TestFamily { seed, size: 0 };
    let (lo, hi) = geo.default_krange();
    // scales used by the family generator
    let scales = ((hi - 2) - (lo + 3) + 1).max(1) as usize;
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("bad family item `{part}`")))?;
        let n: u64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad family item `{part}`")))?;
        match key.trim() {
            "scales" => family.size = n as usize * scales,
            "size" => family.size = n as usize,
            "seed" => family.seed = n,
            other => return Err(CliError::Config(format!("unknown family key `{other}`"))),
        }
    }
    if family.size == 0 {
        return Err(CliError::Config(format!("family `{text}` is empty")));
    }
    Ok(family)
}

pub fn sweep(
    cfg: &SuiteConfig,
    op: &OperatorSpec,
    alphas: &[f64],
    lambdas: &[f64],
    family: &str,
) -> Result<SweepTable> {
    let geo = cfg.geometry()?;
    let base = cfg.herz.params()?;
    let family = parse_family(family, cfg.seed, &geo)?;
    let rules: Vec<LambdaRule> = lambdas.iter().map(|&l| LambdaRule::Absolute(l)).collect();
    Ok(boundedness_sweep(op, &geo, &base, alphas, &rules, family)?)
}

pub fn sweep_csv(t: &SweepTable) -> String {
    let mut s =
        String::from("operator,alpha,lambda,admissible,sup_small,sup_large,growth,stable\n");
    for c in &t.cells {
        s.push_str(&format!(
            "{},{},{},{},{:e},{:e},{:e},{}\n",
            t.operator,
            c.alpha,
            c.lambda,
            c.admissible,
            c.sup_small,
            c.sup_large,
            c.growth,
            c.stable
        ));
    }
    s
}

pub const ORACLE_TARGETS: [&str; 3] = ["constant_herz", "grand_seq_dense", "luxemburg_algebraic"];

/// Reference values from the independent oracles, for the configured
/// constant parameters.
pub fn oracle_run(target: &str, cfg: &SuiteConfig) -> Result<serde_json::Value> {
    let h = &cfg.herz;
    let constant = |text: &str, what: &str| -> Result<f64> {
        herzlab::exponent::Exponent::parse(text)?
            .constant_value()
            .ok_or_else(|| CliError::Config(format!("the {what} oracle needs a constant exponent")))
    };
    Ok(match target {
        "constant_herz" => {
            let case = ConstantHerzCase {
                b: cfg.dilation()?.b(),
                alpha: constant(&h.alpha, "alpha")?,
                q: constant(&h.q, "q")?,
                p: h.p,
                theta: h.theta,
                lambda: h.lambda,
            };
            let v = oracle::constant_herz(&case);
            json!({
                "target": target,
                "function": "indicator of B_0",
                "b": case.b, "alpha": case.alpha, "q": case.q, "p": case.p, "theta": case.theta,
                "value": v.value,
                "argmax_eps": v.argmax_eps,
            })
        }
        "grand_seq_dense" => {
            let v = oracle::grand_seq_dense(&[1.0], h.p, h.theta);
            json!({
                "target": target,
                "sequence": [1.0],
                "p": h.p, "theta": h.theta,
                "value": v.value,
                "argmax_eps": v.argmax_eps,
            })
        }
        "luxemburg_algebraic" => json!({
            "target": target,
            "function": "indicator of [0,2], p = 2 on [0,1), p = 4 on [1,2]",
            "value": oracle::luxemburg_two_piece(),
            "bisection": oracle::luxemburg_piecewise(&[(1.0, 1.0, 2.0), (1.0, 1.0, 4.0)]),
        }),
        other => return Err(CliError::UnknownTarget(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_targets() {
        let cfg = SuiteConfig::default();
        let v = oracle_run("luxemburg_algebraic", &cfg).unwrap();
        assert!((v["value"].as_f64().unwrap() - 1.2720196495).abs() < 1e-9);
        assert!((v["bisection"].as_f64().unwrap() - v["value"].as_f64().unwrap()).abs() < 1e-9);
        let cfg = SuiteConfig::parse("herz.p = 1\nherz.theta = 1").unwrap();
        let v = oracle_run("grand_seq_dense", &cfg).unwrap();
        assert!((v["value"].as_f64().unwrap() - 1.3211).abs() < 1e-4);
        assert!(matches!(
            oracle_run("nope", &cfg),
            Err(CliError::UnknownTarget(_))
        ));
        for t in ORACLE_TARGETS {
            assert!(oracle_run(t, &cfg).is_ok(), "{t}");
        }
    }

    #[test]
    fn family_spec() {
        let cfg = SuiteConfig::default();
        let geo = cfg.geometry().unwrap();
        let f = parse_family("size=12,seed=4", 1, &geo).unwrap();
        assert_eq!((f.size, f.seed), (12, 4));
        let scaled = parse_family("scales=2", 1, &geo).unwrap();
        assert_eq!(scaled.size % 2, 0);
        assert!(parse_family("size=0", 1, &geo).is_err());
        assert!(parse_family("bogus=1", 1, &geo).is_err());
    }

    #[test]
    fn spaces_parse() {
        assert_eq!("herz-morrey".parse::<Space>().unwrap(), Space::HerzMorrey);
        assert!("morrey".parse::<Space>().is_err());
    }
}
