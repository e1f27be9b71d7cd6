use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use super::gold::gold_partition;
use crate::codes::hamming_code_natural;
use crate::error::{Error, Result};
use crate::mollard::{construction_b, MollardFrame};
use crate::partition::{phelps_search, trivial_partition, CodePartition};
use crate::symmetry::{
    exhaustive_automorphisms, lift_generators, reduce_generators, trivial_partition_generators, Automorphism,
    EXHAUSTIVE_AUT_MAX_LENGTH,
};

/// Expression describing how a partition is obtained.
///
/// Text form: `trivial7`, `phelps7`, `gold31`, `import31/22`, and
/// `B(x, y)` for construction B; case and whitespace are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    Trivial(usize),
    Phelps7,
    /// Gold-function partition of length `2^m - 1`, odd `m`.
    Gold(usize),
    /// Externally supplied partition, looked up by length and certified
    /// uniformity number.
    Import { n: usize, uniformity: usize },
    B(Box<Recipe>, Box<Recipe>),
}

impl Recipe {
    pub fn b(l: Recipe, t: Recipe) -> Recipe {
        Recipe::B(Box::new(l), Box::new(t))
    }

    pub fn trivial_m(m: usize) -> Recipe {
        Recipe::Trivial((1 << m) - 1)
    }

    pub fn length(&self) -> usize {
        match self {
            Recipe::Trivial(n) | Recipe::Gold(n) | Recipe::Import { n, .. } => *n,
            Recipe::Phelps7 => 7,
            Recipe::B(l, t) => {
                let (l, t) = (l.length(), t.length());
                l * t + l + t
            }
        }
    }

    pub fn needs_import(&self) -> bool {
        match self {
            Recipe::Import { .. } => true,
            Recipe::B(l, t) => l.needs_import() || t.needs_import(),
            _ => false,
        }
    }

    fn imports(&self, out: &mut Vec<(usize, usize)>) {
        match self {
            Recipe::Import { n, uniformity } => out.push((*n, *uniformity)),
            Recipe::B(l, t) => {
                l.imports(out);
                t.imports(out);
            }
            _ => {}
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Trivial(n) => write!(f, "trivial{n}"),
            Recipe::Phelps7 => write!(f, "phelps7"),
            Recipe::Gold(n) => write!(f, "gold{n}"),
            Recipe::Import { n, uniformity } => write!(f, "import{n}/{uniformity}"),
            Recipe::B(l, t) => write!(f, "B({l}, {t})"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse(format!("recipe `{}` at offset {}: {message}", self.text, self.pos))
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        let ok = self.rest().len() >= token.len() && self.rest()[..token.len()].eq_ignore_ascii_case(token);
        if ok {
            self.pos += token.len();
        }
        ok
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        let value = self.rest()[..digits].parse().map_err(|_| self.error("expected a number"))?;
        self.pos += digits;
        Ok(value)
    }

    fn length(&mut self) -> Result<usize> {
        let n = self.number()?;
        if n < 3 || !(n + 1).is_power_of_two() {
            return Err(self.error(&format!("{n} is not a Hamming length 2^m - 1")));
        }
        Ok(n)
    }

    fn expr(&mut self) -> Result<Recipe> {
        if self.eat("trivial") {
            return Ok(Recipe::Trivial(self.length()?));
        }
        if self.eat("phelps") {
            if self.number()? != 7 {
                return Err(self.error("the Phelps seed has length 7"));
            }
            return Ok(Recipe::Phelps7);
        }
        if self.eat("gold") {
            return Ok(Recipe::Gold(self.length()?));
        }
        if self.eat("import") {
            let n = self.length()?;
            self.expect("/")?;
            let uniformity = self.number()?;
            return Ok(Recipe::Import { n, uniformity });
        }
        if self.eat("B") {
            self.expect("(")?;
            let l = self.expr()?;
            self.expect(",")?;
            let t = self.expr()?;
            self.expect(")")?;
            return Ok(Recipe::b(l, t));
        }
        Err(self.error("expected trivial, phelps7, gold, import or B(...)"))
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { text: s, pos: 0 };
        let r = p.expr()?;
        p.skip_ws();
        if !p.rest().is_empty() {
            return Err(p.error("trailing input"));
        }
        Ok(r)
    }
}

/// Seeds, imports and a cache of everything built so far.
#[derive(Default)]
pub struct BuildContext {
    phelps: OnceLock<Arc<CodePartition>>,
    imports: BTreeMap<(usize, usize), Arc<CodePartition>>,
    cache: Mutex<HashMap<Recipe, Arc<CodePartition>>>,
}

/// Verified automorphisms of a built partition plus the number of lifted
/// candidates that failed confirmation along the way.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub automorphisms: Vec<Automorphism>,
    pub discarded: usize,
}

impl BuildContext {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a certified uniform partition under `(n, uniformity)`.
    pub fn add_import(&mut self, partition: CodePartition, uniformity: usize) {
        self.imports
            .insert((partition.length(), uniformity), Arc::new(partition));
    }

    pub fn has_import(&self, n: usize, uniformity: usize) -> bool {
        self.imports.contains_key(&(n, uniformity))
    }

    /// Imports a recipe needs that have not been supplied.
    pub fn missing_imports(&self, r: &Recipe) -> Vec<(usize, usize)> {
        let mut all = Vec::new();
        r.imports(&mut all);
        all.retain(|key| !self.imports.contains_key(key));
        all
    }

    /// The first partition found by the dimension-2 search.
    pub fn phelps(&self) -> Result<Arc<CodePartition>> {
        if let Some(p) = self.phelps.get() {
            return Ok(p.clone());
        }
        let p = phelps_search(2, 1)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::VerificationFailed("no length 7 partition with dimension 2".into()))?;
        Ok(self.phelps.get_or_init(|| Arc::new(p)).clone())
    }

    pub fn build(&self, r: &Recipe) -> Result<Arc<CodePartition>> {
        if let Some(p) = self.cache.lock().expect("cache poisoned").get(r) {
            return Ok(p.clone());
        }
        let built = match r {
            Recipe::Trivial(n) => {
                let m = (n + 1).trailing_zeros() as usize;
                Arc::new(trivial_partition(Arc::new(hamming_code_natural(m)?))?)
            }
            Recipe::Phelps7 => self.phelps()?,
            Recipe::Gold(n) => Arc::new(gold_partition((n + 1).trailing_zeros() as usize)?),
            Recipe::Import { n, uniformity } => self
                .imports
                .get(&(*n, *uniformity))
                .cloned()
                .ok_or_else(|| Error::MissingImport(r.to_string()))?,
            Recipe::B(l, t) => {
                let (pl, pt) = (self.build(l)?, self.build(t)?);
                Arc::new(construction_b(&pl, &pt)?)
            }
        };
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(r.clone(), built.clone());
        Ok(built)
    }

    /// Automorphisms confirmed by `partition_action`: affine generators for
    /// trivial partitions, exhaustive search up to length 7, and verified
    /// lifts through construction B.
    pub fn generators(&self, r: &Recipe) -> Result<GeneratorSet> {
        let p = self.build(r)?;
        if p.is_trivial() {
            return Ok(GeneratorSet {
                automorphisms: trivial_partition_generators(&p)?,
                discarded: 0,
            });
        }
        if p.length() <= EXHAUSTIVE_AUT_MAX_LENGTH {
            return Ok(GeneratorSet {
                automorphisms: reduce_generators(&exhaustive_automorphisms(&p)?),
                discarded: 0,
            });
        }
        match r {
            Recipe::B(l, t) => {
                let (gl, gt) = (self.generators(l)?, self.generators(t)?);
                let frame = MollardFrame::new(l.length(), t.length());
                let out = lift_generators(&gl.automorphisms, &gt.automorphisms, &frame, &p)?;
                Ok(GeneratorSet {
                    automorphisms: out.verified,
                    discarded: gl.discarded + gt.discarded + out.discarded,
                })
            }
            _ => Err(Error::Unsupported(format!(
                "no automorphism generators available for {r} at length {}",
                p.length()
            ))),
        }
    }
}
