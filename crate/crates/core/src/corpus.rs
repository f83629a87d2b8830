//! Seeded random graded modules and the corpus consistency check.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{decide_flat_dimension, preconditions_hold, CriterionConfig, Outcome, TheoremTag};
use crate::error::{Error, Result};
use crate::input::read_input;
use crate::module::{Matrix, PresentedModule};
use crate::poly::{Monomial, Polynomial};
use crate::resolution::ProjDim;
use crate::ring::QuotientRing;

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            go(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// A random homogeneous polynomial of degree `d` (possibly zero).
pub fn random_homogeneous(ring: &QuotientRing, d: u32, rng: &mut impl Rng) -> Polynomial {
    let p = ring.characteristic();
    let terms = monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .filter_map(|m| if rng.gen_bool(0.6) { Some((m, rng.gen_range(0..p))) } else { None })
        .collect();
    ring.reduce(&ring.poly().from_terms(terms))
}

/// A nonzero graded module with one or two generators in degrees 0..=1 and up
/// to three homogeneous relations whose entries have positive degree.
pub fn random_graded_module(ring: &QuotientRing, rng: &mut impl Rng) -> PresentedModule {
    for _ in 0..32 {
        let g = rng.gen_range(1..=2usize);
        let degrees: Vec<i64> = (0..g).map(|_| rng.gen_range(0..=1)).collect();
        let top = *degrees.iter().max().unwrap();
        let s = rng.gen_range(0..=3usize);
        let mut cols = Vec::new();
        for _ in 0..s {
            let d = top + rng.gen_range(1..=2);
            let col: Vec<Polynomial> =
                degrees.iter().map(|&dr| random_homogeneous(ring, (d - dr) as u32, rng)).collect();
            cols.push(crate::poly::FreeVector::from_dense(col));
        }
        let m = PresentedModule::new(ring, g, Some(degrees), Matrix::from_columns(g, &cols))
            .expect("random relations are homogeneous");
        if !m.is_zero().unwrap_or(true) {
            return m;
        }
    }
    PresentedModule::free(ring, 1)
}

/// `count` seeded random modules over `ring`.
pub fn seeded_modules(ring: &QuotientRing, seed: u64, count: usize) -> Vec<PresentedModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graded_module(ring, &mut rng)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum EntryStatus {
    Consistent,
    Violation(String),
    ResourceExceeded(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub outcome: Option<Outcome>,
    pub theorem_used: Option<TheoremTag>,
    pub oracle_pd: Option<ProjDim>,
    #[serde(flatten)]
    pub status: EntryStatus,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    pub violations: usize,
    pub resource_exceeded: usize,
}

impl CorpusReport {
    /// 0 when consistent, 3 on any violation, otherwise 2 if some entry ran out of budget.
    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            3
        } else if self.resource_exceeded > 0 {
            2
        } else {
            0
        }
    }
}

/// A named instance for [`verify_entries`].
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub ring: QuotientRing,
    pub module: PresentedModule,
    pub criteria: CriterionConfig,
}

/// Runs the decision procedure and the pd oracle on one entry and checks that
/// they agree.
pub fn check_entry(entry: &CorpusEntry) -> Result<EntryReport> {
    let mut report = EntryReport {
        name: entry.name.clone(),
        outcome: None,
        theorem_used: None,
        oracle_pd: None,
        status: EntryStatus::Consistent,
    };
    let verdict = match decide_flat_dimension(&entry.ring, &entry.module, &entry.criteria) {
        Ok(v) => v,
        Err(Error::ResourceExceeded(msg)) => {
            report.status = EntryStatus::ResourceExceeded(msg);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.outcome = Some(verdict.outcome);
    report.theorem_used = verdict.theorem_used;
    report.oracle_pd = verdict.oracle_pd;
    if !preconditions_hold(&verdict, &entry.ring)? {
        report.status =
            EntryStatus::Violation(format!("recorded preconditions do not license the verdict: {verdict:?}"));
        return Ok(report);
    }
    let flat = matches!(verdict.outcome, Outcome::FiniteFlatDim | Outcome::InfiniteFlatDim);
    match verdict.oracle_pd {
        Some(pd) if flat => {
            let claimed_finite = verdict.outcome == Outcome::FiniteFlatDim;
            if claimed_finite != pd.is_finite() {
                report.status = EntryStatus::Violation(format!(
                    "verdict {} disagrees with oracle pd = {pd}; evidence {:?}, notes {:?}",
                    verdict.outcome, verdict.witnesses, verdict.notes
                ));
            }
        }
        None if flat => report.status = EntryStatus::ResourceExceeded("oracle did not finish".into()),
        _ => {
            if verdict.resource_exhausted {
                report.status = EntryStatus::ResourceExceeded(verdict.notes.join("; "));
            }
        }
    }
    Ok(report)
}

/// Checks all entries in parallel; the report keeps the input order.
pub fn verify_entries(entries: &[CorpusEntry]) -> Result<CorpusReport> {
    let results: Vec<Result<EntryReport>> = entries.par_iter().map(check_entry).collect();
    let entries = results.into_iter().collect::<Result<Vec<_>>>()?;
    let violations = entries.iter().filter(|e| matches!(e.status, EntryStatus::Violation(_))).count();
    let resource_exceeded = entries.iter().filter(|e| matches!(e.status, EntryStatus::ResourceExceeded(_))).count();
    Ok(CorpusReport { entries, violations, resource_exceeded })
}

/// `*.frob` files under `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let rd = std::fs::read_dir(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> =
        rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "frob")).collect();
    files.sort();
    Ok(files)
}

/// Loads every corpus file; with a seed, adds `extra` random modules per file
/// over the same ring with the same criteria.
pub fn load_corpus(dir: &Path, budget: u64, seed: Option<u64>, extra: usize) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    for (k, path) in corpus_files(dir)?.iter().enumerate() {
        let f = read_input(path, budget)?;
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let randoms = match seed {
            Some(seed) => seeded_modules(&f.ring, seed.wrapping_add(k as u64), extra),
            None => Vec::new(),
        };
        entries.push(CorpusEntry {
            name: name.clone(),
            ring: f.ring.clone(),
            module: f.module,
            criteria: f.criteria.clone(),
        });
        for (j, m) in randoms.into_iter().enumerate() {
            entries.push(CorpusEntry {
                name: format!("{name}#random{j}"),
                ring: f.ring.clone(),
                module: m,
                criteria: f.criteria.clone(),
            });
        }
    }
    Ok(entries)
}

pub fn verify_corpus(dir: &Path, budget: u64, seed: Option<u64>) -> Result<CorpusReport> {
    verify_entries(&load_corpus(dir, budget, seed, 3)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 0), vec![Monomial::one(1)]);
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let r = QuotientRing::parse(3, &["x", "y"], &[]).unwrap();
        let a = seeded_modules(&r, 7, 5);
        let b = seeded_modules(&r, 7, 5);
        for (m, n) in a.iter().zip(&b) {
            assert_eq!(m.relations(), n.relations());
            assert_eq!(m.gen_degrees(), n.gen_degrees());
            assert!(!m.is_zero().unwrap());
        }
    }

    #[test]
    fn empty_corpus() {
        let dir = std::env::temp_dir().join(format!("frobdim-empty-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let report = verify_corpus(&dir, crate::groebner::DEFAULT_STEP_BUDGET, None).unwrap();
        assert!(report.entries.is_empty());
        assert_eq!(report.exit_code(), 0);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
