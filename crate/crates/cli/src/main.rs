use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hampart::app::format::{self, PartitionData};
use hampart::app::theorem::{corollary_counts, lemma3_chains, theorem_table};
use hampart::app::{BuildContext, Recipe};
use hampart::mollard::{construction_b, MollardFrame};
use hampart::partition::{phelps_search, uniformity, verify_partition, Verdict, VerifyMode};
use hampart::symmetry::{
    distinct_actions, exhaustive_automorphisms, lift_generators, reduce_generators, trivial_partition_generators,
    two_transitive, Automorphism, TransitivityCertificate,
};
use hampart::CodePartition;

/// Partitions of the Hamming space into cosets of Hamming codes.
#[derive(Parser)]
#[command(name = "hampart", version)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Style::Human, global = true)]
    format: Style,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Build a partition from a recipe such as `B(trivial3, phelps7)`.
    Build {
        recipe: String,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Partition files for `importN/U` leaves, as FILE or FILE@U.
        #[arg(long = "import")]
        imports: Vec<String>,
    },
    /// Check that a file partitions F^n.
    Verify {
        file: PathBuf,
        /// Also test every vector (n <= 15).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Pairwise intersection dimensions of the component codes.
    Uniformity {
        file: PathBuf,
        /// List every pair.
        #[arg(long)]
        pairs: bool,
    },
    /// Automorphism generators and the 2-transitivity verdict.
    Aut {
        file: PathBuf,
        /// Search all isometries (n <= 7).
        #[arg(long, conflicts_with = "lift")]
        exhaustive: bool,
        /// The file is B(L, T): lift generators of L and T.
        #[arg(long, num_args = 2, value_names = ["L", "T"])]
        lift: Option<Vec<PathBuf>>,
    },
    /// Build and check every row of the table for one m.
    TheoremTable {
        #[arg(long)]
        m: usize,
        #[arg(long = "import")]
        imports: Vec<String>,
    },
    /// The length 31, 127, 255 and 1023 chain.
    Lemma3 {
        #[arg(long = "import")]
        imports: Vec<String>,
    },
    /// Lower bounds on nonequivalent uniform and 2-transitive partitions.
    Counts {
        #[arg(long)]
        m: usize,
        #[arg(long = "import")]
        imports: Vec<String>,
    },
    /// Append a parity coordinate.
    Extend {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Delete coordinate POSITION (1-based) of an extended partition.
    Puncture {
        file: PathBuf,
        #[arg(long)]
        position: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Search length 7 partitions with pairwise intersection dimension D.
    PhelpsSearch {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        limit: usize,
        /// Write the first partition found here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Out {
    style: Style,
}

impl Out {
    /// Prints `human` or a `kind key=value ...` record.
    fn emit(&self, human: impl AsRef<str>, kind: &str, fields: &[(&str, String)]) {
        match self.style {
            Style::Human => println!("{}", human.as_ref()),
            Style::Records => {
                let body: Vec<String> = fields
                    .iter()
                    .map(|(k, v)| format!("{k}={}", v.replace(' ', "")))
                    .collect();
                println!("{kind} {}", body.join(" "));
            }
        }
    }
}

fn context(imports: &[String]) -> Result<BuildContext> {
    let mut ctx = BuildContext::new();
    for spec in imports {
        let (path, claimed) = match spec.rsplit_once('@') {
            Some((p, u)) if !u.is_empty() && u.bytes().all(|b| b.is_ascii_digit()) => (p, Some(u.parse()?)),
            _ => (spec.as_str(), None),
        };
        let imported = format::import_verified(Path::new(path), claimed).with_context(|| format!("importing {path}"))?;
        let Some(u) = imported.report.uniformity_number else {
            bail!("{path} is a valid partition but not uniform ({})", imported.report.signature());
        };
        ctx.add_import(imported.partition, u);
    }
    Ok(ctx)
}

fn read_regular(path: &Path) -> Result<CodePartition> {
    Ok(format::read_file(path)
        .with_context(|| format!("reading {}", path.display()))?
        .into_regular()?)
}

fn small_generators(p: &CodePartition) -> Result<Vec<Automorphism>> {
    if p.is_trivial() {
        Ok(trivial_partition_generators(p)?)
    } else if p.length() <= 7 {
        Ok(reduce_generators(&exhaustive_automorphisms(p)?))
    } else {
        bail!("length {} partition is neither trivial nor short enough to search; use --lift", p.length())
    }
}

fn report_transitivity(out: &Out, cert: &TransitivityCertificate, generators: usize) {
    out.emit(
        format!(
            "generators: {generators}\nordered-pair orbit: {} of {}\npoint orbit: {}\n2-transitive: {}",
            cert.orbit_size, cert.expected, cert.point_orbit_size, cert.two_transitive
        ),
        "transitivity",
        &[
            ("generators", generators.to_string()),
            ("orbit", cert.orbit_size.to_string()),
            ("expected", cert.expected.to_string()),
            ("point_orbit", cert.point_orbit_size.to_string()),
            ("two_transitive", cert.two_transitive.to_string()),
        ],
    );
}

fn run(cli: Cli) -> Result<bool> {
    let out = Out { style: cli.format };
    match cli.command {
        Command::Build {
            recipe,
            output,
            imports,
        } => {
            let recipe: Recipe = recipe.parse()?;
            let ctx = context(&imports)?;
            let p = ctx.build(&recipe)?;
            let text = format::serialize(&p);
            match output {
                Some(path) => {
                    std::fs::write(&path, text)?;
                    eprintln!("wrote {recipe} (n = {}) to {}", p.length(), path.display());
                }
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Verify { file, exhaustive } => {
            let p = read_regular(&file)?;
            let mode = if exhaustive { VerifyMode::Exhaustive } else { VerifyMode::Algebraic };
            let start = Instant::now();
            let cert = verify_partition(&p, mode)?;
            let verdict = |v: &Verdict| match v {
                Verdict::Valid => "valid".to_string(),
                Verdict::Invalid(why) => format!("invalid: {why}"),
            };
            let mut human = format!(
                "n = {}, {} pairs checked\nalgebraic: {}",
                cert.length,
                cert.pairs_checked,
                verdict(&cert.algebraic)
            );
            if let Some(ex) = &cert.exhaustive {
                human.push_str(&format!("\nexhaustive: {}", verdict(ex)));
            }
            human.push_str(&format!("\ntime: {:.2?}", start.elapsed()));
            out.emit(
                human,
                "verify",
                &[
                    ("n", cert.length.to_string()),
                    ("pairs", cert.pairs_checked.to_string()),
                    ("valid", cert.is_valid().to_string()),
                    ("modes_agree", cert.modes_agree().to_string()),
                ],
            );
            Ok(cert.is_valid() && cert.modes_agree())
        }
        Command::Uniformity { file, pairs } => {
            let p = read_regular(&file)?;
            let r = uniformity(&p)?;
            let number = r.uniformity_number.map_or_else(|| "none".into(), |u| u.to_string());
            out.emit(
                format!(
                    "uniform: {}\nuniformity number: {number}\nsignature: {}\nvalues over distinct codes: {:?}",
                    r.is_uniform,
                    r.signature(),
                    r.distinct_code_values()
                ),
                "uniformity",
                &[
                    ("uniform", r.is_uniform.to_string()),
                    ("number", number),
                    ("signature", r.signature().to_string()),
                ],
            );
            if pairs {
                for ((i, j), d) in r.pairs() {
                    out.emit(format!("{i} {j} {d}"), "pair", &[("i", i.to_string()), ("j", j.to_string()), ("dim", d.to_string())]);
                }
            }
            Ok(true)
        }
        Command::Aut { file, exhaustive, lift } => {
            let p = read_regular(&file)?;
            let gens: Vec<Automorphism> = if exhaustive {
                let all = exhaustive_automorphisms(&p)?;
                let acts = distinct_actions(&all);
                out.emit(
                    format!("automorphisms: {} ({} distinct index actions)", all.len(), acts.len()),
                    "automorphisms",
                    &[("count", all.len().to_string()), ("actions", acts.len().to_string())],
                );
                reduce_generators(&all)
            } else if let Some(files) = lift {
                let (pl, pt) = (read_regular(&files[0])?, read_regular(&files[1])?);
                if construction_b(&pl, &pt)? != p {
                    bail!("{} is not B({}, {})", file.display(), files[0].display(), files[1].display());
                }
                let frame = MollardFrame::new(pl.length(), pt.length());
                let res = lift_generators(&small_generators(&pl)?, &small_generators(&pt)?, &frame, &p)?;
                out.emit(
                    format!("lifted candidates: {} verified, {} discarded", res.verified.len(), res.discarded),
                    "lift",
                    &[("verified", res.verified.len().to_string()), ("discarded", res.discarded.to_string())],
                );
                res.verified
            } else {
                small_generators(&p)?
            };
            for g in &gens {
                out.emit(
                    format!("  perm {:?} shift {} -> {:?}", g.isometry.perm(), g.isometry.shift(), g.action.mapping()),
                    "generator",
                    &[
                        ("perm", format!("{:?}", g.isometry.perm())),
                        ("shift", g.isometry.shift().to_string()),
                        ("action", format!("{:?}", g.action.mapping())),
                    ],
                );
            }
            let acts: Vec<_> = gens.iter().map(|g| g.action.clone()).collect();
            let cert = two_transitive(&acts, p.length())?;
            report_transitivity(&out, &cert, acts.len());
            Ok(cert.two_transitive)
        }
        Command::TheoremTable { m, imports } => {
            let ctx = context(&imports)?;
            let table = theorem_table(m, &ctx)?;
            if out.style == Style::Human {
                println!("{:>3} {:>2} {:>5} {:>1} {:>9}  {:<40} {:<22} status", "m", "e", "n", "δ", "predicted", "recipe", "computed");
            }
            for row in &table.rows {
                let secs = row.measured.as_ref().map_or(0.0, |x| x.elapsed.as_secs_f64());
                out.emit(
                    format!(
                        "{:>3} {:>2} {:>5} {:>1} {:>9}  {:<40} {:<22} {} ({secs:.2}s)",
                        row.m,
                        row.e,
                        row.n,
                        row.delta,
                        row.predicted,
                        row.recipe_text(),
                        row.computed_text(),
                        row.status
                    ),
                    "row",
                    &[
                        ("m", row.m.to_string()),
                        ("e", row.e.to_string()),
                        ("n", row.n.to_string()),
                        ("delta", row.delta.to_string()),
                        ("predicted", row.predicted.to_string()),
                        ("recipe", row.recipe_text()),
                        ("computed", row.computed_text()),
                        ("status", row.status.to_string()),
                    ],
                );
            }
            if let Err(e) = table.check() {
                eprintln!("error: {e}");
                return Ok(false);
            }
            Ok(true)
        }
        Command::Lemma3 { imports } => {
            let ctx = context(&imports)?;
            let report = lemma3_chains(&ctx)?;
            for s in &report.steps {
                let computed = s
                    .measured
                    .as_ref()
                    .map_or_else(|| "-".into(), |x| x.uniformity_number.map_or_else(|| format!("non-uniform {}", x.signature), |u| u.to_string()));
                out.emit(
                    format!(
                        "{:>5} {:<44} expected {:>5} = {:<14} computed {computed}: {}",
                        s.n,
                        s.recipe.to_string(),
                        s.expected,
                        s.terms_text(),
                        s.status
                    ),
                    "chain",
                    &[
                        ("n", s.n.to_string()),
                        ("recipe", s.recipe.to_string()),
                        ("expected", s.expected.to_string()),
                        ("terms", s.terms_text()),
                        ("computed", computed),
                        ("status", s.status.to_string()),
                    ],
                );
            }
            if let Err(e) = report.check() {
                eprintln!("error: {e}");
                return Ok(false);
            }
            Ok(true)
        }
        Command::Counts { m, imports } => {
            let ctx = context(&imports)?;
            let c = corollary_counts(m, &ctx)?;
            for x in &c.exhibits {
                let two = x
                    .transitivity
                    .as_ref()
                    .map_or_else(|| "unknown".into(), |t| format!("{} ({}/{})", t.two_transitive, t.orbit_size, t.expected));
                out.emit(
                    format!(
                        "e={} {:<40} uniform={} signature={} 2-transitive={two} extension-preserved={}",
                        x.e, x.recipe.to_string(), x.uniform, x.signature, x.extended_valid
                    ),
                    "exhibit",
                    &[
                        ("e", x.e.to_string()),
                        ("recipe", x.recipe.to_string()),
                        ("uniform", x.uniform.to_string()),
                        ("signature", x.signature.to_string()),
                        ("two_transitive", two),
                        ("extension_preserved", x.extended_valid.to_string()),
                    ],
                );
            }
            for (a, b) in &c.not_distinguished {
                out.emit(format!("not distinguished: {a} and {b}"), "not_distinguished", &[("a", a.clone()), ("b", b.clone())]);
            }
            let required = c.uniform_required.map_or_else(|| "n/a".into(), |r| r.to_string());
            out.emit(
                format!(
                    "uniform: {} certified (bound {required})\n2-transitive uniform: {} certified (bound {})",
                    c.uniform_count, c.two_transitive_count, c.two_transitive_required
                ),
                "counts",
                &[
                    ("m", m.to_string()),
                    ("uniform", c.uniform_count.to_string()),
                    ("uniform_bound", required),
                    ("two_transitive", c.two_transitive_count.to_string()),
                    ("two_transitive_bound", c.two_transitive_required.to_string()),
                ],
            );
            Ok(c.meets_bounds())
        }
        Command::Extend { file, output } => {
            let p = read_regular(&file)?;
            let e = p.extend();
            let ok = e.verify().is_valid();
            format::write_file(&output, &PartitionData::Extended(e))?;
            Ok(ok)
        }
        Command::Puncture { file, position, output } => {
            let PartitionData::Extended(e) = format::read_file(&file)? else {
                bail!("{} is not an extended partition", file.display());
            };
            if position == 0 || position > e.length() {
                bail!("position must be in 1..={}", e.length());
            }
            let p = e.puncture(position - 1)?;
            format::write_file(&output, &PartitionData::Regular(p))?;
            Ok(true)
        }
        Command::PhelpsSearch { dim, limit, output } => {
            let start = Instant::now();
            let found = phelps_search(dim, limit)?;
            out.emit(
                format!("found {} partition(s) in {:.2?}", found.len(), start.elapsed()),
                "search",
                &[("dim", dim.to_string()), ("found", found.len().to_string())],
            );
            let mut ok = !found.is_empty();
            for (k, p) in found.iter().enumerate().take(10) {
                let cert = verify_partition(p, VerifyMode::Exhaustive)?;
                let r = uniformity(p)?;
                ok &= cert.is_valid() && r.uniformity_number == Some(dim);
                out.emit(
                    format!("  #{k}: valid={} signature={}", cert.is_valid(), r.signature()),
                    "partition",
                    &[("index", k.to_string()), ("valid", cert.is_valid().to_string()), ("signature", r.signature().to_string())],
                );
            }
            if let (Some(path), Some(p)) = (output, found.first()) {
                std::fs::write(&path, format::serialize(p))?;
            }
            Ok(ok)
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(value) = std::env::var("HPART_THREADS") {
        let threads: usize = value.parse().with_context(|| format!("HPART_THREADS={value}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|()| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
