use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hpref::analysis::{adjusted_rand, class_stats, stats_rows, NoiseHandling, STATS_HEADER};
use hpref::drivers::{run_grid, two_regime_set, GridSpec, TwoRegimeConfig};
use hpref::io::{
    partition_csv, read_clusterings, read_dataset, read_dendrogram, read_labels,
    render_dendrogram_svg, to_newick, write_clusterings, write_dendrogram,
};
use hpref::{
    assign_weights, build_matrix, pair_count, presets, resample_stability, run_hpref,
    ClusteringSet, Dataset64, HprefConfig, PairSpec, StabilityConfig,
};

use crate::args::{
    CutArgs, GenerateArgs, HprefArgs, NoiseArg, PairsArg, Preset, StabilityArgs,
};
use crate::error::{at, CliError, CliResult};

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    at(path, fs::write(path, text).map_err(Into::into))
}

/// Returns `seed`, or draws one and reports it.
fn seed_or_chosen(seed: Option<u64>, out: &mut dyn Write) -> CliResult<u64> {
    match seed {
        Some(s) => Ok(s),
        None => {
            let s = rand::random::<u64>();
            say(out, format_args!("seed: {s}"))?;
            Ok(s)
        }
    }
}

fn say(out: &mut dyn Write, args: std::fmt::Arguments) -> CliResult<()> {
    writeln!(out, "{args}").map_err(|e| CliError::Core(e.into()))
}

fn read_grid(path: &Path) -> CliResult<GridSpec> {
    let text = at(path, fs::read_to_string(path).map_err(Into::into))?;
    Ok(toml::from_str(&text)?)
}

pub fn generate(args: &GenerateArgs, out: &mut dyn Write) -> CliResult<()> {
    let set = match (args.preset, &args.input) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage("give either --preset or --input, not both"))
        }
        (Some(Preset::Surrogate), _) => {
            if args.grid.is_some() {
                return Err(CliError::usage("the surrogate preset has no grid"));
            }
            let seed = seed_or_chosen(args.seed, out)?;
            let cfg = TwoRegimeConfig {
                seed,
                ..TwoRegimeConfig::default()
            };
            two_regime_set::<f64>(&cfg)?.set
        }
        (Some(preset), None) => {
            let data: Dataset64 = match preset {
                Preset::Iris => presets::iris()?,
                _ => presets::toy()?,
            };
            let spec = match (&args.grid, preset) {
                (Some(path), _) => read_grid(path)?,
                (None, Preset::Iris) => GridSpec::iris(),
                (None, _) => GridSpec::kmeans_pair(3, 3, seed_or_chosen(args.seed, out)?),
            };
            run_grid(&data, &spec)?
        }
        (None, Some(input)) => {
            let grid = args
                .grid
                .as_ref()
                .ok_or_else(|| CliError::usage("--input needs a --grid specification"))?;
            let spec = read_grid(grid)?;
            let data: Dataset64 = at(input, read_dataset(input))?;
            run_grid(&data, &spec)?
        }
        (None, None) => return Err(CliError::usage("give --preset or --input with --grid")),
    };
    at(&args.output, write_clusterings(&set, &args.output))?;
    say(
        out,
        format_args!(
            "wrote {} clusterings of {} points to {}",
            set.len(),
            set.n_points(),
            args.output.display()
        ),
    )
}

fn svg_path(args: &HprefArgs) -> PathBuf {
    args.svg
        .clone()
        .unwrap_or_else(|| args.output.with_extension("svg"))
}

pub fn hpref(args: &HprefArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = HprefConfig::new(args.max_leaves)?;
    let set = at(&args.input, read_clusterings(&args.input))?;
    let n = set.n_points();
    let diagonal = args.pairs.diagonal();
    let spec = match args.pairs.pairs {
        PairsArg::Full => PairSpec::Full,
        PairsArg::Count(k) => {
            let seed = seed_or_chosen(args.pairs.seed, out)?;
            if k >= pair_count(n, diagonal) {
                say(out, format_args!("note: {k} pairs cover all pairs; using every pair"))?;
            }
            PairSpec::Sampled { n: k, seed }
        }
    };
    let fm = build_matrix(&set, &spec.build(n, diagonal)?)?;
    let tree = assign_weights(run_hpref(&fm, &cfg)?);

    let coloring = args.cut.map(|k| tree.cut(k)).transpose()?;
    at(&args.output, write_dendrogram(&tree, &args.output))?;
    let svg = svg_path(args);
    write_file(&svg, &render_dendrogram_svg(&tree, coloring.as_ref())?)?;
    if let Some(path) = &args.newick {
        write_file(path, &format!("{}\n", to_newick(&tree)))?;
    }

    say(
        out,
        format_args!(
            "{} clusterings, {} points, {} columns, {} leaves",
            set.len(),
            n,
            fm.n_cols(),
            tree.leaf_count()
        ),
    )?;
    for e in &tree.events {
        let [a, b] = e.children;
        say(
            out,
            format_args!(
                "event {}: split node {} (score {}) by multiplicity {} into {} | {}",
                e.index,
                e.node,
                e.score,
                e.multiplicity,
                tree.node(a).members.len(),
                tree.node(b).members.len()
            ),
        )?;
    }
    let m: Vec<String> = tree.multiplicities().iter().map(usize::to_string).collect();
    say(out, format_args!("multiplicities: {}", m.join(" ")))?;
    say(
        out,
        format_args!("wrote {} and {}", args.output.display(), svg.display()),
    )
}

fn noise_handling(n: NoiseArg) -> NoiseHandling {
    match n {
        NoiseArg::Singletons => NoiseHandling::Singletons,
        NoiseArg::Shared => NoiseHandling::SharedCluster,
    }
}

pub fn cut(args: &CutArgs, out: &mut dyn Write) -> CliResult<()> {
    let tree = at(&args.input, read_dendrogram(&args.input))?;
    let partition = tree.cut(args.cut)?;
    let set: Option<ClusteringSet> = match &args.clusterings {
        Some(path) => {
            let set = at(path, read_clusterings(path))?;
            if set.len() != tree.n_rows {
                return Err(CliError::usage(format!(
                    "{} holds {} clusterings, the dendrogram {}",
                    path.display(),
                    set.len(),
                    tree.n_rows
                )));
            }
            Some(set)
        }
        None => None,
    };
    if let Some(path) = &args.output {
        write_file(path, &partition_csv(&partition, set.as_ref())?)?;
    }
    for (c, members) in partition.iter().enumerate() {
        say(out, format_args!("class {c}: {} clusterings", members.len()))?;
    }

    let labels = match (&args.labels, args.preset) {
        (Some(path), _) => Some(at(path, read_labels(path))?),
        (None, Some(Preset::Iris)) => Some(presets::iris_labels()?),
        (None, Some(other)) => {
            return Err(CliError::usage(format!("the {other:?} preset has no labels")))
        }
        (None, None) => None,
    };
    let mut table = String::new();
    if let Some(labels) = labels {
        let set = set
            .as_ref()
            .ok_or_else(|| CliError::usage("adjusted Rand statistics need --clusterings"))?;
        let noise = noise_handling(args.noise);
        let ari = set
            .iter()
            .map(|c| adjusted_rand(c, &labels, noise))
            .collect::<hpref::Result<Vec<f64>>>()?;
        table.push_str(&stats_rows("ari", &class_stats(&partition, &ari)?));
    }
    if let Some(set) = &set {
        let phi: Option<Vec<f64>> = set
            .iter()
            .map(|c| c.provenance().get("phi").and_then(|v| v.parse().ok()))
            .collect();
        if let Some(phi) = phi {
            table.push_str(&stats_rows("phi", &class_stats(&partition, &phi)?));
        }
    }
    if !table.is_empty() {
        say(out, format_args!("{}", STATS_HEADER.trim_end()))?;
        for line in table.lines() {
            say(out, format_args!("{}", format_row(line)))?;
        }
    }
    if let Some(path) = &args.stats {
        if table.is_empty() {
            return Err(CliError::usage(
                "no statistics available: give --labels or a set with phi provenance",
            ));
        }
        write_file(path, &format!("{STATS_HEADER}{table}"))?;
    }
    Ok(())
}

/// Rounds the numeric fields of a stats row to 3 decimals for display.
fn format_row(line: &str) -> String {
    line.split(',')
        .enumerate()
        .map(|(i, f)| match f.parse::<f64>() {
            Ok(v) if i >= 3 => format!("{v:.3}"),
            _ => f.to_owned(),
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn stability(args: &StabilityArgs, out: &mut dyn Write) -> CliResult<()> {
    if !(0.0..=1.0).contains(&args.threshold) {
        return Err(CliError::usage("--threshold must lie in [0, 1]"));
    }
    let set = at(&args.input, read_clusterings(&args.input))?;
    let seed = seed_or_chosen(args.seed, out)?;
    let cfg = StabilityConfig {
        max_leaves: args.max_leaves,
        n_pairs: args.pairs,
        resamples: args.resamples,
        seed,
        include_diagonal: args.diagonal(),
    };
    let report = resample_stability(&set, &cfg)?;
    if report.degenerate && args.resamples > 1 {
        eprintln!(
            "warning: {} pairs cover every pair; running once on all pairs",
            args.pairs
        );
    }
    let mut csv = String::from("partition,count,class,members\n");
    for (i, p) in report.partitions.iter().enumerate() {
        let classes: Vec<String> = p
            .partition
            .iter()
            .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        say(
            out,
            format_args!(
                "partition {i}: {}/{} runs, class sizes {:?}",
                p.count,
                report.runs,
                p.partition.iter().map(Vec::len).collect::<Vec<_>>()
            ),
        )?;
        for (c, members) in classes.iter().enumerate() {
            csv.push_str(&format!("{i},{},{c},{members}\n", p.count));
        }
    }
    if let Some(path) = &args.output {
        write_file(path, &csv)?;
    }
    if !report.reaches(args.threshold) {
        return Err(CliError::Unstable {
            threshold: args.threshold,
            runs: report.runs,
            best: report.top().count,
        });
    }
    Ok(())
}
