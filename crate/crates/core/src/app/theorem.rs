use std::fmt;
use std::time::{Duration, Instant};

use super::recipe::{BuildContext, Recipe};
use crate::error::{Error, Result};
use crate::partition::{uniformity, verify_partition, Signature, VerifyMode};
use crate::symmetry::{two_transitive, TransitivityCertificate};

/// 1 for odd `m`, 0 for even.
pub fn delta(m: usize) -> usize {
    m % 2
}

/// `n - 2m + 2e - δ(m)` with `n = 2^m - 1`.
pub fn predicted_uniformity(m: usize, e: usize) -> usize {
    (1usize << m) - 1 - 2 * m + 2 * e - delta(m)
}

pub fn max_e(m: usize) -> usize {
    m.div_ceil(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowPlan {
    Build(Recipe),
    Open,
}

/// How a row's partition is obtained. Rows with `m ≥ 5` odd and `e = 1`
/// come from an imported length `n` partition; the `l = 3` chains of the
/// short-length cases and the `l = 7` recursion cover the rest.
pub fn row_plan(m: usize, e: usize) -> RowPlan {
    assert!(m >= 3 && (1..=max_e(m)).contains(&e), "no row (m={m}, e={e})");
    let n = (1usize << m) - 1;
    if e == max_e(m) {
        return RowPlan::Build(Recipe::Trivial(n));
    }
    match (m, e) {
        (3, 1) => RowPlan::Build(Recipe::Phelps7),
        (4, 1) => RowPlan::Open,
        (5, 2) => RowPlan::Build(Recipe::b(Recipe::Trivial(3), Recipe::Phelps7)),
        (7, 2) => RowPlan::Build(Recipe::b(
            Recipe::Trivial(3),
            Recipe::Import { n: 31, uniformity: 22 },
        )),
        (m, 1) if m % 2 == 1 => RowPlan::Build(Recipe::Import {
            n,
            uniformity: predicted_uniformity(m, 1),
        }),
        (m, e) if m % 2 == 0 => match row_plan(m - 3, e) {
            RowPlan::Build(t) => RowPlan::Build(Recipe::b(Recipe::Phelps7, t)),
            RowPlan::Open => RowPlan::Open,
        },
        (m, e) => match row_plan(m - 3, e - 1) {
            RowPlan::Build(t) => RowPlan::Build(Recipe::b(Recipe::Phelps7, t)),
            RowPlan::Open => RowPlan::Open,
        },
    }
}

/// What the certifier found for a built partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measured {
    pub valid: bool,
    pub uniformity_number: Option<usize>,
    pub signature: Signature,
    /// Values taken over pairs of components with different codes.
    pub distinct_code_values: Vec<usize>,
    pub elapsed: Duration,
}

impl Measured {
    fn describe(&self) -> String {
        match self.uniformity_number {
            Some(u) => u.to_string(),
            None => format!("non-uniform {}", self.signature),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    BuiltAndVerified,
    Mismatch,
    Invalid,
    SkippedMissingImport(Vec<(usize, usize)>),
    Open,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::BuiltAndVerified => f.write_str("built-and-verified"),
            RowStatus::Mismatch => f.write_str("mismatch"),
            RowStatus::Invalid => f.write_str("invalid"),
            RowStatus::SkippedMissingImport(_) => f.write_str("skipped-missing-import"),
            RowStatus::Open => f.write_str("open"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremRow {
    pub m: usize,
    pub e: usize,
    pub n: usize,
    pub delta: usize,
    pub predicted: usize,
    pub plan: RowPlan,
    pub status: RowStatus,
    pub measured: Option<Measured>,
}

impl TheoremRow {
    pub fn recipe(&self) -> Option<&Recipe> {
        match &self.plan {
            RowPlan::Build(r) => Some(r),
            RowPlan::Open => None,
        }
    }

    pub fn recipe_text(&self) -> String {
        match &self.plan {
            RowPlan::Build(r) if r.needs_import() && matches!(self.status, RowStatus::SkippedMissingImport(_)) => {
                format!("requires-import {r}")
            }
            RowPlan::Build(r) => r.to_string(),
            RowPlan::Open => "open".into(),
        }
    }

    pub fn computed_text(&self) -> String {
        self.measured.as_ref().map_or_else(|| "-".into(), Measured::describe)
    }
}

#[derive(Clone, Debug)]
pub struct TheoremTable {
    pub m: usize,
    pub rows: Vec<TheoremRow>,
}

impl TheoremTable {
    /// Fails on the first row whose computed value disagrees with the
    /// prediction or whose partition did not verify.
    pub fn check(&self) -> Result<()> {
        for row in &self.rows {
            if matches!(row.status, RowStatus::Mismatch | RowStatus::Invalid) {
                return Err(Error::RecipeMismatch {
                    recipe: row.recipe_text(),
                    expected: row.predicted,
                    computed: row.computed_text(),
                });
            }
        }
        Ok(())
    }
}

fn measure(ctx: &BuildContext, r: &Recipe) -> Result<Measured> {
    let start = Instant::now();
    let p = ctx.build(r)?;
    let cert = verify_partition(&p, VerifyMode::Algebraic)?;
    let report = uniformity(&p)?;
    Ok(Measured {
        valid: cert.is_valid(),
        uniformity_number: report.uniformity_number,
        signature: report.signature(),
        distinct_code_values: report.distinct_code_values(),
        elapsed: start.elapsed(),
    })
}

/// Builds, verifies and measures every row for `m`.
pub fn theorem_table(m: usize, ctx: &BuildContext) -> Result<TheoremTable> {
    if m < 3 {
        return Err(Error::Unsupported(format!("the table starts at m = 3, got {m}")));
    }
    let mut rows = Vec::new();
    for e in 1..=max_e(m) {
        let plan = row_plan(m, e);
        let predicted = predicted_uniformity(m, e);
        let (status, measured) = match &plan {
            RowPlan::Open => (RowStatus::Open, None),
            RowPlan::Build(r) => {
                let missing = ctx.missing_imports(r);
                if !missing.is_empty() {
                    (RowStatus::SkippedMissingImport(missing), None)
                } else {
                    let got = measure(ctx, r)?;
                    let status = if !got.valid {
                        RowStatus::Invalid
                    } else if got.uniformity_number == Some(predicted) {
                        RowStatus::BuiltAndVerified
                    } else {
                        RowStatus::Mismatch
                    };
                    (status, Some(got))
                }
            }
        };
        rows.push(TheoremRow {
            m,
            e,
            n: (1 << m) - 1,
            delta: delta(m),
            predicted,
            plan,
            status,
            measured,
        });
    }
    Ok(TheoremTable { m, rows })
}

/// One step of the length 31 / 127 / 255 / 1023 chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub n: usize,
    pub expected: usize,
    pub recipe: Recipe,
    /// `(u_l, u_t, lt)`, computed from the inputs; `None` entries are
    /// non-uniform inputs.
    pub terms: Option<(Option<usize>, Option<usize>, usize)>,
    pub measured: Option<Measured>,
    pub status: RowStatus,
}

impl ChainStep {
    pub fn terms_text(&self) -> String {
        let show = |u: Option<usize>| u.map_or_else(|| "?".into(), |v| v.to_string());
        match self.terms {
            Some((a, b, lt)) => format!("{} + {} + {lt}", show(a), show(b)),
            None => "-".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub steps: Vec<ChainStep>,
}

impl ChainReport {
    pub fn check(&self) -> Result<()> {
        for s in &self.steps {
            if matches!(s.status, RowStatus::Mismatch | RowStatus::Invalid) {
                return Err(Error::RecipeMismatch {
                    recipe: s.recipe.to_string(),
                    expected: s.expected,
                    computed: s.measured.as_ref().map_or_else(|| "-".into(), Measured::describe),
                });
            }
        }
        Ok(())
    }
}

pub fn lemma3_recipes() -> Vec<(usize, Recipe)> {
    let import = || Recipe::Import { n: 31, uniformity: 22 };
    vec![
        (24, Recipe::b(Recipe::Trivial(3), Recipe::Phelps7)),
        (116, Recipe::b(Recipe::Trivial(3), import())),
        (241, Recipe::b(Recipe::Phelps7, import())),
        (1007, Recipe::b(Recipe::Trivial(3), Recipe::b(Recipe::Phelps7, import()))),
    ]
}

/// The length 31 step always; the three longer steps when a certified
/// 31/22 partition has been imported. Each step recomputes the sum of the
/// inputs' uniformity numbers and `lt` and compares both it and the
/// certified value of the result with the expected number.
pub fn lemma3_chains(ctx: &BuildContext) -> Result<ChainReport> {
    let mut steps = Vec::new();
    for (expected, recipe) in lemma3_recipes() {
        let n = recipe.length();
        let missing = ctx.missing_imports(&recipe);
        if !missing.is_empty() {
            steps.push(ChainStep {
                n,
                expected,
                recipe,
                terms: None,
                measured: None,
                status: RowStatus::SkippedMissingImport(missing),
            });
            continue;
        }
        let Recipe::B(l, t) = &recipe else {
            unreachable!("chain steps are construction B")
        };
        let ul = uniformity(&*ctx.build(l)?)?.uniformity_number;
        let ut = uniformity(&*ctx.build(t)?)?.uniformity_number;
        let lt = l.length() * t.length();
        let law = ul.zip(ut).map(|(a, b)| a + b + lt);
        let got = measure(ctx, &recipe)?;
        let status = if !got.valid {
            RowStatus::Invalid
        } else if law == Some(expected) && got.uniformity_number == Some(expected) {
            RowStatus::BuiltAndVerified
        } else {
            RowStatus::Mismatch
        };
        steps.push(ChainStep {
            n,
            expected,
            terms: Some((ul, ut, lt)),
            recipe,
            measured: Some(got),
            status,
        });
    }
    Ok(ChainReport { steps })
}

/// A partition offered towards one of the lower bounds.
#[derive(Clone, Debug)]
pub struct Exhibit {
    pub e: usize,
    pub recipe: Recipe,
    pub uniform: bool,
    pub signature: Signature,
    pub transitivity: Option<TransitivityCertificate>,
    pub generators: usize,
    pub discarded_lifts: usize,
    /// Signature of the parity extension, and whether it matches.
    pub extended_signature: Option<Signature>,
    pub extended_valid: bool,
}

#[derive(Clone, Debug)]
pub struct CountsReport {
    pub m: usize,
    pub uniform_required: Option<usize>,
    pub two_transitive_required: usize,
    pub exhibits: Vec<Exhibit>,
    /// Certified uniform partitions with pairwise different signatures.
    pub uniform_count: usize,
    /// Those among them that are also certified 2-transitive.
    pub two_transitive_count: usize,
    /// Pairs of exhibits (by recipe) whose signatures coincide.
    pub not_distinguished: Vec<(String, String)>,
}

impl CountsReport {
    pub fn meets_bounds(&self) -> bool {
        self.uniform_required.is_none_or(|r| self.uniform_count >= r)
            && self.two_transitive_count >= self.two_transitive_required
    }
}

/// Lower bounds on the number of nonequivalent uniform and 2-transitive
/// uniform partitions for `m`, using every row buildable from what `ctx`
/// holds. Nonequivalence is certified by differing signatures only.
pub fn corollary_counts(m: usize, ctx: &BuildContext) -> Result<CountsReport> {
    let table = theorem_table(m, ctx)?;
    let mut exhibits = Vec::new();
    for row in &table.rows {
        let Some(measured) = &row.measured else { continue };
        let recipe = row.recipe().expect("measured rows have recipes").clone();
        if !measured.valid {
            continue;
        }
        let (transitivity, generators, discarded) = match ctx.generators(&recipe) {
            Ok(gens) => {
                let acts: Vec<_> = gens.automorphisms.iter().map(|a| a.action.clone()).collect();
                let n = recipe.length();
                (Some(two_transitive(&acts, n)?), acts.len(), gens.discarded)
            }
            Err(Error::Unsupported(_)) => (None, 0, 0),
            Err(e) => return Err(e),
        };
        let p = ctx.build(&recipe)?;
        let ext = p.extend();
        let extended_signature = ext.signature()?;
        exhibits.push(Exhibit {
            e: row.e,
            recipe,
            uniform: measured.uniformity_number.is_some(),
            signature: measured.signature.clone(),
            transitivity,
            generators,
            discarded_lifts: discarded,
            extended_valid: ext.verify().is_valid() && extended_signature == measured.signature,
            extended_signature: Some(extended_signature),
        });
    }

    let mut seen: Vec<&Signature> = Vec::new();
    let mut seen_two: Vec<&Signature> = Vec::new();
    let mut not_distinguished = Vec::new();
    for (k, x) in exhibits.iter().enumerate() {
        for y in &exhibits[..k] {
            if x.signature == y.signature {
                not_distinguished.push((y.recipe.to_string(), x.recipe.to_string()));
            }
        }
        if x.uniform && !seen.contains(&&x.signature) {
            seen.push(&x.signature);
            if x.transitivity.as_ref().is_some_and(|c| c.two_transitive) {
                seen_two.push(&x.signature);
            }
        }
    }
    Ok(CountsReport {
        m,
        uniform_required: (m != 4).then_some(max_e(m)),
        two_transitive_required: m / 3,
        uniform_count: seen.len(),
        two_transitive_count: seen_two.len(),
        exhibits,
        not_distinguished,
    })
}
