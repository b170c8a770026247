use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use lightspan::{
    additive_factor, build_net_hierarchy, build_spanner, build_wmax_spanner, generate_graph,
    normalize, read_graph, verify_lightness, verify_stretch, write_graph, Family, Graph,
    GraphFormat, LightnessReport, Spanner, SpannerParams, StretchBound, StretchReport, SweepRow,
    VerifyMode, Weights, REPORT_SCHEMA_VERSION, SWEEP_CSV_HEADER,
};
use serde::Serialize;

use crate::{
    BuildArgs, BuildWmaxArgs, FamilyArg, FamilyOpts, FormatArg, GenArgs, GraphFormatArg,
    InputOpts, InspectArgs, ModeArg, SweepArgs, VerifyArgs, WeightsArg,
};

impl From<GraphFormatArg> for GraphFormat {
    fn from(f: GraphFormatArg) -> Self {
        match f {
            GraphFormatArg::EdgeList => GraphFormat::EdgeList,
            GraphFormatArg::Dimacs => GraphFormat::Dimacs,
        }
    }
}

fn family_of(opts: &FamilyOpts, n: usize) -> Family {
    match opts.family {
        FamilyArg::Path => Family::Path { n },
        FamilyArg::Star => Family::Star { n },
        FamilyArg::Grid => {
            let rows = opts.rows.max(1);
            Family::Grid {
                rows,
                cols: (n / rows).max(1),
            }
        }
        FamilyArg::ErdosRenyi => match opts.p {
            Some(p) => Family::ErdosRenyi { n, p },
            None => Family::erdos_renyi(n),
        },
        FamilyArg::Geometric => match opts.radius {
            Some(radius) => Family::GeometricUnitSquare { n, radius },
            None => Family::geometric(n),
        },
    }
}

fn weights_of(opts: &FamilyOpts) -> Weights {
    let default = if opts.family == FamilyArg::Geometric {
        WeightsArg::Euclidean
    } else {
        WeightsArg::Uniform
    };
    match opts.weights.unwrap_or(default) {
        WeightsArg::Unit => Weights::Unit,
        WeightsArg::Uniform => Weights::Uniform {
            lo: opts.lo,
            hi: opts.hi,
        },
        WeightsArg::Euclidean => Weights::Euclidean,
    }
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Path => "path",
        FamilyArg::Star => "star",
        FamilyArg::Grid => "grid",
        FamilyArg::ErdosRenyi => "erdos_renyi",
        FamilyArg::Geometric => "geometric",
    }
}

fn load_graph(input: &InputOpts) -> Result<Graph> {
    let format = match input.graph_format {
        Some(f) => f.into(),
        None => match input.input.extension().and_then(|e| e.to_str()) {
            Some("gr") | Some("dimacs") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        },
    };
    let file = File::open(&input.input)
        .with_context(|| format!("opening {}", input.input.display()))?;
    read_graph(BufReader::new(file), format)
        .with_context(|| format!("reading {} as {format}", input.input.display()))
}

/// Writes through a temporary sibling and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn write_graph_file(path: &Path, g: &Graph, format: GraphFormat) -> Result<()> {
    let mut buf = Vec::new();
    write_graph(g, &mut buf, format)?;
    write_atomic(path, &buf)
}

fn warn_large_k(n: usize, k: usize) {
    if n >= 2 && k as f64 > (n as f64).log2() {
        eprintln!("warning: k = {k} exceeds log2(n) = {:.2}; larger k brings no benefit", (n as f64).log2());
    }
}

pub fn gen(a: &GenArgs) -> Result<()> {
    let family = family_of(&a.family, a.family.n);
    let g = generate_graph(&family, weights_of(&a.family), a.seed)
        .with_context(|| format!("gen failed for {family:?}, seed {}", a.seed))?;
    let name = match a.graph_format {
        GraphFormatArg::EdgeList => "graph.edges",
        GraphFormatArg::Dimacs => "graph.gr",
    };
    let path = a.output_dir.join(name);
    write_graph_file(&path, &g, a.graph_format.into())?;
    println!("wrote {} (n = {}, m = {})", path.display(), g.n(), g.m());
    Ok(())
}

fn save_spanner(dir: &Path, host: &Graph, sp: &Spanner) -> Result<()> {
    write_json(&dir.join("spanner.json"), sp)?;
    write_graph_file(&dir.join("spanner.edges"), &sp.to_graph(host)?, GraphFormat::EdgeList)?;
    println!(
        "wrote {} ({} edges, weight {:.6})",
        dir.join("spanner.json").display(),
        sp.size(),
        sp.weight()
    );
    for (tag, s) in &sp.summary {
        println!("  {:<10} {:>8} edges  weight {:.6}", tag.as_str(), s.edges, s.weight);
    }
    Ok(())
}

pub fn build(a: &BuildArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    warn_large_k(g.n(), a.k);
    let params = SpannerParams {
        eps: a.eps,
        k: a.k,
        seed: a.seed,
        unsafe_eps: a.unsafe_eps,
    };
    let sp = build_spanner(&g, &params).with_context(|| {
        format!(
            "build failed (input {}, eps {}, k {}, seed {})",
            a.input.input.display(),
            a.eps,
            a.k,
            a.seed
        )
    })?;
    save_spanner(&a.output_dir, &g, &sp)
}

pub fn build_wmax(a: &BuildWmaxArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    let sp = build_wmax_spanner(&g, a.eps).with_context(|| {
        format!("build-wmax failed (input {}, eps {})", a.input.input.display(), a.eps)
    })?;
    save_spanner(&a.output_dir, &g, &sp)
}

fn verify_mode(mode: ModeArg, sample_size: usize, seed: u64) -> VerifyMode {
    match mode {
        ModeArg::AllPairs => VerifyMode::AllPairs,
        ModeArg::Sampled => VerifyMode::Sampled {
            sources: sample_size,
            seed,
        },
    }
}

fn stretch_csv(r: &StretchReport) -> String {
    format!(
        "schema_version,pairs_checked,worst_mult_stretch,worst_additive_slack,bound_used,violations\n{},{},{},{},{},{}\n",
        r.schema_version,
        r.pairs_checked,
        r.worst_mult_stretch,
        r.worst_additive_slack,
        r.bound_used,
        r.violation_count
    )
}

fn lightness_csv(r: &LightnessReport) -> String {
    format!(
        "schema_version,spanner_weight,mst_weight,lightness,size\n{},{},{},{},{}\n",
        r.schema_version, r.spanner_weight, r.mst_weight, r.lightness, r.size
    )
}

pub fn verify(a: &VerifyArgs) -> Result<bool> {
    let g = load_graph(&a.input)?;
    let sp_path = a
        .spanner
        .clone()
        .unwrap_or_else(|| a.output_dir.join("spanner.json"));
    let text = fs::read_to_string(&sp_path)
        .with_context(|| format!("reading {}", sp_path.display()))?;
    let sp = Spanner::from_json(&text).with_context(|| format!("parsing {}", sp_path.display()))?;
    let mode = verify_mode(a.mode, a.sample_size, a.seed);
    let bound = StretchBound::for_spanner(&g, &sp);
    let stretch = verify_stretch(&g, &sp, &bound, mode)
        .with_context(|| format!("verify failed (spanner {}, mode {mode:?})", sp_path.display()))?;
    let light = verify_lightness(&g, &sp)?;
    match a.format {
        FormatArg::Json => {
            write_json(&a.output_dir.join("stretch_report.json"), &stretch)?;
            write_json(&a.output_dir.join("lightness_report.json"), &light)?;
        }
        FormatArg::Csv => {
            write_atomic(&a.output_dir.join("stretch_report.csv"), stretch_csv(&stretch).as_bytes())?;
            write_atomic(&a.output_dir.join("lightness_report.csv"), lightness_csv(&light).as_bytes())?;
        }
        FormatArg::EdgeList => bail!("reports are written as json or csv, not edge_list"),
    }
    println!(
        "pairs {}  worst d_H/d_G {:.6}  worst slack {:.3e} (bound {:.3e})  lightness {:.4}  size {}",
        stretch.pairs_checked,
        stretch.worst_mult_stretch,
        stretch.worst_additive_slack,
        stretch.bound_used,
        light.lightness,
        light.size
    );
    if stretch.passed() {
        println!("stretch: PASS");
    } else {
        println!(
            "stretch: FAIL ({} violations, {} below d_G)",
            stretch.violation_count, stretch.lower_bound_violations
        );
    }
    Ok(stretch.passed())
}

#[derive(Serialize)]
struct LevelDump<'a> {
    level: usize,
    delta: f64,
    members: &'a [usize],
}

#[derive(Serialize)]
struct HierarchyDump<'a> {
    schema_version: u32,
    n: usize,
    eps: f64,
    /// Factor applied to host weights; deltas and weights below are scaled.
    scale: f64,
    mst_weight: f64,
    climb: usize,
    top: usize,
    levels: Vec<LevelDump<'a>>,
    /// `rep[i][v]`: level-`i` representative of `v`.
    rep: &'a [Vec<usize>],
    h0_edges: Vec<(usize, usize, f64)>,
    h0_weight: f64,
}

pub fn inspect(a: &InspectArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    let (ng, scale) = normalize(&g)?;
    let h = build_net_hierarchy(&ng, a.eps, a.unsafe_eps)
        .with_context(|| format!("inspect failed (input {}, eps {})", a.input.input.display(), a.eps))?;
    let dump = HierarchyDump {
        schema_version: REPORT_SCHEMA_VERSION,
        n: ng.n(),
        eps: h.eps,
        scale,
        mst_weight: h.mst_weight,
        climb: h.climb,
        top: h.top,
        levels: h
            .levels
            .iter()
            .enumerate()
            .map(|(level, net)| LevelDump {
                level,
                delta: net.delta,
                members: &net.members,
            })
            .collect(),
        rep: &h.rep,
        h0_edges: h
            .h0_edges
            .iter()
            .map(|&id| {
                let e = ng.edge(id);
                (e.u, e.v, e.w)
            })
            .collect(),
        h0_weight: h.h0_weight,
    };
    let path = a.output_dir.join("hierarchy.json");
    write_json(&path, &dump)?;
    println!("wrote {} ({} levels, H_0 has {} edges)", path.display(), h.top + 1, h.h0_edges.len());
    for (i, net) in h.levels.iter().enumerate() {
        println!("  level {i:>2}  delta {:>10}  members {}", net.delta, net.members.len());
    }
    Ok(())
}

pub fn sweep(a: &SweepArgs) -> Result<bool> {
    fs::create_dir_all(&a.output_dir)
        .with_context(|| format!("creating {}", a.output_dir.display()))?;
    let path: PathBuf = a.output_dir.join("sweep.csv");
    let mut out = BufWriter::new(
        File::create(&path).with_context(|| format!("creating {}", path.display()))?,
    );
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    out.flush()?;
    let mut all_passed = true;
    for &n in &a.ns {
        for &k in &a.ks {
            warn_large_k(n, k);
            for &eps in &a.eps_values {
                for seed in a.seed..a.seed + a.seeds {
                    let family = family_of(&a.family, n);
                    let cell = || format!("cell n={n} k={k} eps={eps} seed={seed}");
                    let g = generate_graph(&family, weights_of(&a.family), seed)
                        .with_context(|| format!("gen failed in {}", cell()))?;
                    let start = Instant::now();
                    let params = SpannerParams {
                        eps,
                        k,
                        seed,
                        unsafe_eps: a.unsafe_eps,
                    };
                    let sp = build_spanner(&g, &params)
                        .with_context(|| format!("build failed in {}", cell()))?;
                    let bound = StretchBound::near_additive(eps, k);
                    let stretch = verify_stretch(&g, &sp, &bound, verify_mode(a.mode, a.sample_size, seed))
                        .with_context(|| format!("verify failed in {}", cell()))?;
                    let light = verify_lightness(&g, &sp)?;
                    let row = SweepRow {
                        family: family_name(a.family.family).to_string(),
                        n: g.n(),
                        k,
                        eps,
                        seed,
                        size: sp.size(),
                        lightness: light.lightness,
                        worst_mult: stretch.worst_mult_stretch,
                        worst_slack: stretch.worst_additive_slack,
                        bound: additive_factor(eps, k),
                        violations: stretch.violation_count + stretch.lower_bound_violations,
                        runtime_ms: start.elapsed().as_millis(),
                    };
                    all_passed &= stretch.passed();
                    writeln!(out, "{}", row.to_csv_line())?;
                    out.flush()?;
                    println!(
                        "{}: size {} lightness {:.3} worst slack {:.3e} violations {}",
                        cell(),
                        row.size,
                        row.lightness,
                        row.worst_slack,
                        row.violations
                    );
                }
            }
        }
    }
    println!("wrote {}", path.display());
    Ok(all_passed)
}
