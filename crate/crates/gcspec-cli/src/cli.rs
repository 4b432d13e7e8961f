//! Argument parsing and the subcommands.

use crate::tables;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gcspec::cluster::{cluster3, cluster4, SidePair};
use gcspec::colorings::{build_c, build_cn, build_n, check_c, gc_bipartition, thm_1_6_verify};
use gcspec::gc::{compose_check, gc_build, normalize_params};
use gcspec::graphcore::{build_named, map_isomorphic, read_json, to_csv, to_dot, to_json_string, RotationGraph};
use gcspec::lattice::{Pt, Valence};
use gcspec::spectra::{
    bipartite_symmetry_defect, gc_spectrum, sym_eig, thm_1_3_density_check, verify_lemma_4_3, verify_lemma_4_4,
    verify_thm_1_2, verify_thm_1_4, verify_thm_1_5, verify_thm_3_2_3_3, Report, GROUP_TOL,
};
use gcspec::{Error, Result};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

/// Tolerance override read when `--tol` is absent.
pub const TOL_ENV: &str = "GCSPEC_TOL";

#[derive(Parser, Debug)]
#[command(name = "gcspec", version, about = "Goldberg-Coxeter subdivisions and their Laplacian spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build GC_{k,l}(X) and write it with provenance.
    Build(BuildArgs),
    /// Laplacian eigenvalues with multiplicity groups.
    Spectrum(SpectrumArgs),
    /// Recompute the multiplicity tables and compare with the reference values.
    Tables(TablesArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Write a graph, provenance, numbering or coloring.
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Named seed: tetrahedron, cube, dodecahedron, octahedron,
    /// triangular_prism, hex_torus(k), square_torus(n).
    #[arg(long, conflicts_with = "graph")]
    pub seed: Option<String>,
    /// Graph file in the JSON rotation format.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub k: i64,
    #[arg(long, default_value_t = 0)]
    pub l: i64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub source: Source,
    /// Subdivide first when given.
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long, default_value_t = 0)]
    pub l: i64,
    /// Grouping tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// 1: multiplicity of 4, 2: multiplicity of 2.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    #[arg(long, default_value_t = tables::KMAX)]
    pub kmax: usize,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Grouping tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    #[value(name = "thm1_2")]
    Thm1_2,
    #[value(name = "thm1_3")]
    Thm1_3,
    #[value(name = "thm1_4")]
    Thm1_4,
    #[value(name = "thm1_5")]
    Thm1_5,
    #[value(name = "thm1_6")]
    Thm1_6,
    #[value(name = "thm3_2")]
    Thm3_2,
    #[value(name = "thm3_3")]
    Thm3_3,
    #[value(name = "prop2_3")]
    Prop2_3,
    #[value(name = "prop2_4")]
    Prop2_4,
    #[value(name = "lemma4_3")]
    Lemma4_3,
    #[value(name = "lemma4_4")]
    Lemma4_4,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub l: Option<i64>,
    /// Outer parameter of a composition, as `k,l`.
    #[arg(long, value_parser = parse_pair)]
    pub z: Option<(i64, i64)>,
    /// Inner parameter of a composition, as `k,l`.
    #[arg(long, value_parser = parse_pair)]
    pub zprime: Option<(i64, i64)>,
    /// Slack tolerance for inequalities.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Artifact {
    Graph,
    Provenance,
    /// Edge numbering of X.
    Cn,
    /// Vertex numbering of GC_{2,0}(X).
    N,
    /// Black/white coloring of X.
    C,
    /// 2-coloring of GC_{k,l}(X).
    Bipartition,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long, value_enum, default_value = "graph")]
    pub what: Artifact,
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    #[arg(long, default_value_t = 0)]
    pub l: i64,
    #[command(flatten)]
    pub output: Output,
}

fn parse_pair(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `k,l`, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((p(a)?, p(b)?))
}

/// What a command produced: text for the output, and whether its checks
/// passed.
struct Outcome {
    text: String,
    pass: bool,
    /// Diagnostics for stderr.
    notes: String,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome {
            text,
            pass: true,
            notes: String::new(),
        }
    }
}

/// Exit status: 0 when everything passed, 1 when a check failed, 2 for
/// usage or input errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let msg = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{msg}");
            } else {
                let _ = write!(stderr, "{msg}");
            }
            return code;
        }
    };
    let env_tol = std::env::var(TOL_ENV).ok();
    let result = execute(&cli.command, env_tol.as_deref()).and_then(|o| {
        let out = match &cli.command {
            Command::Build(a) => a.output.out.clone(),
            Command::Spectrum(a) => a.output.out.clone(),
            Command::Tables(a) => a.output.out.clone(),
            Command::Export(a) => a.output.out.clone(),
            Command::Verify(_) => None,
        };
        match out {
            Some(p) => std::fs::write(&p, &o.text)?,
            None => stdout.write_all(o.text.as_bytes())?,
        }
        stderr.write_all(o.notes.as_bytes())?;
        Ok(o.pass)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn resolve_tol(flag: Option<f64>, env: Option<&str>, default: f64) -> Result<f64> {
    let t = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(s)) => s
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::InvalidParams(format!("{TOL_ENV}={s}: {e}")))?,
        (None, None) => default,
    };
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(Error::InvalidParams(format!("tolerance must be positive, got {t}")))
    }
}

fn load(source: &Source, default_seed: &str) -> Result<RotationGraph> {
    match (&source.seed, &source.graph) {
        (_, Some(path)) => read_json(path),
        (Some(name), None) => build_named(name),
        (None, None) => build_named(default_seed),
    }
}

fn valence_of(x: &RotationGraph) -> Result<Valence> {
    x.regular_degree()
        .and_then(Valence::from_degree)
        .ok_or_else(|| Error::InvalidParams("graph must be 3- or 4-regular".into()))
}

/// `(k,l)` in the canonical form of its unit orbit.
fn normalized(x: &RotationGraph, k: i64, l: i64) -> Result<(i64, i64)> {
    let n = normalize_params(valence_of(x)?, k, l)?;
    Ok((n.k, n.l))
}

fn execute(cmd: &Command, env_tol: Option<&str>) -> Result<Outcome> {
    match cmd {
        Command::Build(a) => cmd_build(a),
        Command::Spectrum(a) => cmd_spectrum(a, env_tol),
        Command::Tables(a) => cmd_tables(a, env_tol),
        Command::Verify(a) => cmd_verify(a, env_tol),
        Command::Export(a) => cmd_export(a),
    }
}

fn graph_text(g: &RotationGraph, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json_string(g)? + "\n",
        Format::Dot => to_dot(g),
        Format::Csv => to_csv(g),
    })
}

fn cmd_build(a: &BuildArgs) -> Result<Outcome> {
    let x = load(&a.source, "tetrahedron")?;
    let (k, l) = normalized(&x, a.k, a.l)?;
    let g = gc_build(&x, k, l)?;
    let text = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut doc: serde_json::Value = serde_json::from_str(&to_json_string(&g.graph)?)?;
            doc["params"] = serde_json::json!([k, l]);
            doc["provenance"] = serde_json::from_str(&g.provenance_json()?)?;
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        f => graph_text(&g.graph, f)?,
    };
    Ok(Outcome::ok(text))
}

fn cmd_spectrum(a: &SpectrumArgs, env_tol: Option<&str>) -> Result<Outcome> {
    let tol = resolve_tol(a.tol, env_tol, GROUP_TOL)?;
    let x = load(&a.source, "tetrahedron")?;
    let g = match a.k {
        Some(k) => {
            let (k, l) = normalized(&x, k, a.l)?;
            gc_build(&x, k, l)?.graph
        }
        None => x,
    };
    let s = sym_eig(&g.laplacian(), 1e-10)?;
    let s = gcspec::spectra::Spectrum::new(s.values, tol);
    let text = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => s.to_csv(),
        Format::Json => s.to_json() + "\n",
        Format::Dot => return Err(Error::InvalidParams("spectra are written as csv or json".into())),
    };
    Ok(Outcome::ok(text))
}

fn cmd_tables(a: &TablesArgs, env_tol: Option<&str>) -> Result<Outcome> {
    if a.kmax == 0 || a.kmax > tables::KMAX {
        return Err(Error::InvalidParams(format!("--kmax must be in 1..={}", tables::KMAX)));
    }
    let tol = resolve_tol(a.tol, env_tol, tables::TABLE_TOL)?;
    let cells = tables::compute(a.kmax, a.jobs, tol)?;
    let report = tables::compare(a.which, &cells);
    let text = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => tables::to_csv(a.which, a.kmax, &cells),
        Format::Json => tables::to_json(a.which, a.kmax, &cells) + "\n",
        Format::Dot => return Err(Error::InvalidParams("tables are written as csv or json".into())),
    };
    let notes = report.failures().map(|c| format!("mismatch: {}\n", c.label)).collect();
    Ok(Outcome {
        text,
        pass: report.passed(),
        notes,
    })
}

fn k_or(a: &VerifyArgs, default: i64) -> Result<usize> {
    let k = a.k.unwrap_or(default);
    usize::try_from(k)
        .ok()
        .filter(|&k| k > 0)
        .ok_or_else(|| Error::InvalidParams(format!("--k must be positive, got {k}")))
}

fn cmd_verify(a: &VerifyArgs, env_tol: Option<&str>) -> Result<Outcome> {
    let tol = resolve_tol(a.tol, env_tol, 1e-8)?;
    let report = match a.suite {
        Suite::Thm1_2 => {
            let x = load(&a.source, "cube")?;
            let (k, l) = normalized(&x, a.k.unwrap_or(2), a.l.unwrap_or(0))?;
            verify_thm_1_2(&x, k, l, tol)?
        }
        Suite::Thm1_3 => {
            let k = k_or(a, 60)?;
            let valences: Vec<usize> = match (&a.source.seed, &a.source.graph) {
                (None, None) => vec![3, 4],
                _ => vec![valence_of(&load(&a.source, "tetrahedron")?)?.degree()],
            };
            let mut r = Report::new(format!("covering radius of invariant eigenvalues, k = {k}"));
            for v in valences {
                let radius = thm_1_3_density_check(v, k, 1e-4)?;
                r.push(format!("valence {v}: radius {radius:.6} < 0.2"), 0.2 - radius, 0.0);
            }
            r
        }
        Suite::Thm1_4 => {
            let x = load(&a.source, "tetrahedron")?;
            let k = k_or(a, 1)?;
            let mut r = verify_thm_1_4(&x, k)?;
            table_cross_check(&mut r, &a.source, &x, 2 * k, true)?;
            r
        }
        Suite::Thm1_5 => {
            let x = load(&a.source, "octahedron")?;
            let k = k_or(a, 1)?;
            let mut r = verify_thm_1_5(&x, k)?;
            table_cross_check(&mut r, &a.source, &x, 2 * k, false)?;
            r
        }
        Suite::Thm1_6 => thm_1_6_verify(&load(&a.source, "tetrahedron")?, k_or(a, 2)?)?,
        Suite::Thm3_2 | Suite::Thm3_3 => {
            let default = if a.suite == Suite::Thm3_2 { "tetrahedron" } else { "octahedron" };
            let x = load(&a.source, default)?;
            let want = if a.suite == Suite::Thm3_2 { Valence::Three } else { Valence::Four };
            if valence_of(&x)? != want {
                return Err(Error::InvalidParams(format!("this suite needs a {}-valent seed", want.degree())));
            }
            let k = k_or(a, 3)?;
            let mut r = verify_thm_3_2_3_3(&x, k, tol)?;
            r.extend(degree_profile_report(want, k)?);
            r
        }
        Suite::Prop2_3 => prop_2_3(&load(&a.source, "tetrahedron")?, a.z.unwrap_or((2, 0)), a.zprime.unwrap_or((1, 1)))?,
        Suite::Prop2_4 => {
            let x = load(&a.source, "cube")?;
            let (k, l) = (a.k.unwrap_or(2), a.l.unwrap_or(1));
            let (g, color) = gc_bipartition(&x, k, l)?;
            let mut r = Report::new(format!("bipartition of GC({k},{l})"));
            let proper = (0..g.graph.num_edges()).all(|e| {
                let (p, q) = g.graph.edge_endpoints(e);
                color[p] != color[q]
            });
            r.push_bool(format!("proper 2-coloring of {} vertices", g.n()), proper);
            let s = sym_eig(&g.graph.laplacian(), 1e-10)?;
            let d = bipartite_symmetry_defect(&s);
            r.push(format!("spectrum symmetric about 3 (defect {d:.1e})"), tol - d, 0.0);
            r
        }
        Suite::Lemma4_3 => verify_lemma_4_3(k_or(a, 6)?)?,
        Suite::Lemma4_4 => verify_lemma_4_4(k_or(a, 3)?)?,
    };
    Ok(Outcome {
        text: format!("{report}\n"),
        pass: report.passed(),
        notes: String::new(),
    })
}

/// Adds a comparison with the reference table when the seed is one of the
/// table seeds and `GC_{m,0}` is in range.
fn table_cross_check(r: &mut Report, source: &Source, x: &RotationGraph, m: usize, both: bool) -> Result<()> {
    let Some(name) = source.seed.as_deref() else {
        return Ok(());
    };
    let Some(row) = tables::SEEDS.iter().position(|&s| s == name) else {
        return Ok(());
    };
    if m > tables::KMAX {
        return Ok(());
    }
    let s = gc_spectrum(x, m as i64, 0, GROUP_TOL)?;
    let got4 = s.multiplicity(4.0);
    let want4 = tables::expected(1, row, m);
    r.push_bool(format!("mult(4) in GC({m},0) equals the table value {want4}"), got4 == want4);
    if both {
        let want2 = tables::expected(2, row, m);
        r.push_bool(format!("mult(2) in GC({m},0) equals the table value {want2}"), s.multiplicity(2.0) == want2);
    }
    Ok(())
}

/// Degree counts of the `(k,0)`-cluster against `{3, 3k−6, k²−3k+3}` or
/// `{4, 4k−8, k²−4k+4}` for degrees `r−2, r−1, r`.
pub fn degree_profile_report(valence: Valence, k: usize) -> Result<Report> {
    let mut r = Report::new(format!("degree profile of the ({k},0)-cluster"));
    if k < 2 {
        return Ok(r);
    }
    let ki = k as i64;
    let (c, want) = match valence {
        Valence::Three => (cluster3(ki, 0)?, [3, 3 * ki - 6, ki * ki - 3 * ki + 3]),
        Valence::Four => (cluster4(ki, 0, SidePair::EastWest)?, [4, 4 * ki - 8, ki * ki - 4 * ki + 4]),
    };
    let deg = valence.degree();
    let prof = c.degree_profile()?;
    let got: Vec<i64> = (0..3).map(|i| prof.get(&(deg - 2 + i)).copied().unwrap_or(0) as i64).collect();
    let total: usize = prof.values().sum();
    r.push_bool(format!("counts {got:?} = {want:?}"), got == want && total == c.len());
    Ok(r)
}

fn prop_2_3(x: &RotationGraph, z: (i64, i64), zp: (i64, i64)) -> Result<Report> {
    let valence = valence_of(x)?;
    let mut r = Report::new(format!("compositions and isomorphisms for z = {z:?}, z' = {zp:?}"));
    r.push_bool("GC_z(GC_z'(X)) ≅ GC_zz'(X)", compose_check(x, z, zp)?);
    for &(k, l) in &[z, zp] {
        let g = gc_build(x, k, l)?;
        let want = x.n() as i64 * valence.norm(k, l);
        r.push_bool(format!("|V(GC({k},{l}))| = {} = |V(X)|·{}", g.n(), valence.norm(k, l)), g.n() as i64 == want);
        let swapped = gc_build(x, l, k)?;
        r.push_bool(format!("GC({k},{l}) ≅ GC({l},{k})"), map_isomorphic(&g.graph, &swapped.graph));
        let mut p = Pt::new(k, l);
        let units = if valence == Valence::Three { 6 } else { 4 };
        for _ in 1..units {
            p = valence.unit_rotate(p);
            let h = gc_build(x, p.x, p.y)?;
            r.push_bool(format!("GC({k},{l}) ≅ GC({},{})", p.x, p.y), map_isomorphic(&g.graph, &h.graph));
        }
    }
    Ok(r)
}

fn cmd_export(a: &ExportArgs) -> Result<Outcome> {
    let x = load(&a.source, "tetrahedron")?;
    let text = match a.what {
        Artifact::Graph => {
            let (k, l) = normalized(&x, a.k, a.l)?;
            let g = if (k, l) == (1, 0) { x } else { gc_build(&x, k, l)?.graph };
            graph_text(&g, a.output.format.unwrap_or(Format::Json))?
        }
        Artifact::Provenance => {
            let (k, l) = normalized(&x, a.k, a.l)?;
            gc_build(&x, k, l)?.provenance_json()? + "\n"
        }
        Artifact::Cn => build_cn(&x)?.to_json()? + "\n",
        Artifact::N => build_n(&x, &build_cn(&x)?)?.1.to_json()? + "\n",
        Artifact::C => match build_c(&x)? {
            Ok(c) => {
                let st = check_c(&x, &c)?;
                if !(st.c1 && st.c2 && st.c3) {
                    return Err(Error::InvalidNumbering("constructed coloring fails a condition".into()));
                }
                c.to_json()? + "\n"
            }
            Err(w) => {
                return Ok(Outcome {
                    text: format!(
                        "{{\n  \"coloring\": null,\n  \"seed\": {},\n  \"witness\": \"{:?}\",\n  \"exhaustive\": {}\n}}\n",
                        w.seed, w.failure, w.exhaustive
                    ),
                    pass: false,
                    notes: String::new(),
                })
            }
        },
        Artifact::Bipartition => {
            let (_, color) = gc_bipartition(&x, a.k, a.l)?;
            let c = gcspec::colorings::BWColoring { black: color };
            c.to_json()? + "\n"
        }
    };
    Ok(Outcome::ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("gcspec").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn pairs_and_tolerances() {
        assert_eq!(parse_pair("2,1"), Ok((2, 1)));
        assert_eq!(parse_pair(" 3 , 0"), Ok((3, 0)));
        assert!(parse_pair("2").is_err());
        assert_eq!(resolve_tol(None, None, 1e-6).unwrap(), 1e-6);
        assert_eq!(resolve_tol(None, Some("1e-3"), 1e-6).unwrap(), 1e-3);
        assert_eq!(resolve_tol(Some(0.5), Some("1e-3"), 1e-6).unwrap(), 0.5);
        assert!(resolve_tol(Some(-1.0), None, 1e-6).is_err());
        assert!(resolve_tol(None, Some("x"), 1e-6).is_err());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["build", "--seed", "tetrahedron", "--k", "0", "--l", "0"]).0, 2);
        assert_eq!(call(&["tables", "3"]).0, 2);
        assert_eq!(call(&["verify", "nope"]).0, 2);
        assert_eq!(call(&["build", "--seed", "nosuch", "--k", "1"]).0, 2);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("spectrum"));
    }

    #[test]
    fn degree_profiles() {
        for k in 2..=6 {
            assert!(degree_profile_report(Valence::Three, k).unwrap().passed());
            assert!(degree_profile_report(Valence::Four, k).unwrap().passed());
        }
    }
}
