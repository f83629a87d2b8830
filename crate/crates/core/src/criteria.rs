//! Decision procedures for finite flat dimension and zero-dimensional
//! injectivity from Tor/Ext vanishing against ᵉR.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{ext_frobenius, sup_homology, tor_frobenius_complex, FrobTable};
use crate::homology::ext_module;
use crate::module::{FreeComplex, PresentedModule};
use crate::resolution::{minimal_free_resolution, projective_dimension_oracle, ProjDim};
use crate::ring::QuotientRing;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Auto,
    /// Only the general-ring evidence path.
    ForceB,
    /// Only the Cohen–Macaulay threshold path.
    ForceC,
    /// Only the complete-intersection path.
    ForceD,
    /// Zero-dimensional injectivity via Ext.
    ZeroDim,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s.trim() {
            "auto" => Ok(Mode::Auto),
            "b" | "force_b" => Ok(Mode::ForceB),
            "c" | "force_c" => Ok(Mode::ForceC),
            "d" | "force_d" => Ok(Mode::ForceD),
            "zero_dim" => Ok(Mode::ZeroDim),
            other => Err(Error::Invalid(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionConfig {
    pub e_list: Vec<u32>,
    pub t: i64,
    /// Defaults to `max(1, dim R)`.
    pub window: Option<usize>,
    pub mode: Mode,
}

impl Default for CriterionConfig {
    fn default() -> Self {
        CriterionConfig { e_list: vec![1], t: 1, window: None, mode: Mode::Auto }
    }
}

impl CriterionConfig {
    pub fn new(e_list: Vec<u32>, t: i64) -> Self {
        CriterionConfig { e_list, t, ..Default::default() }
    }

    pub fn with_window(mut self, w: usize) -> Self {
        self.window = Some(w);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Sorts and deduplicates `e_list` and checks the basic constraints.
    pub fn validated(&self) -> Result<CriterionConfig> {
        let mut c = self.clone();
        c.e_list.sort_unstable();
        c.e_list.dedup();
        if c.e_list.is_empty() {
            return Err(Error::Invalid("e list is empty".into()));
        }
        if c.mode != Mode::ZeroDim && c.e_list[0] == 0 {
            return Err(Error::Invalid("Frobenius exponents must be positive".into()));
        }
        if c.window == Some(0) {
            return Err(Error::Invalid("window must be at least 1".into()));
        }
        Ok(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    FiniteFlatDim,
    InfiniteFlatDim,
    Inconclusive,
    Injective,
    NotInjective,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The result that licenses a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremTag {
    /// Finite flat dimension forces all Tor_i(ᵉR, M), i > sup H, to vanish.
    #[serde(rename = "ps-direction")]
    PsDirection,
    /// Cohen–Macaulay rings: one `e >= log_p e(R)` and a window of length r.
    #[serde(rename = "cm-threshold")]
    CmThreshold,
    /// Complete intersections: a single vanishing cell.
    #[serde(rename = "ci")]
    CompleteIntersection,
    /// Zero-dimensional rings: one Ext with `e >= log_p λ(R)`.
    #[serde(rename = "zero-dim-ext")]
    ZeroDimExt,
    /// General rings: vanishing windows for infinitely many e.
    #[serde(rename = "general-evidence")]
    GeneralEvidence,
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremTag::PsDirection => "ps-direction",
            TheoremTag::CmThreshold => "cm-threshold",
            TheoremTag::CompleteIntersection => "ci",
            TheoremTag::ZeroDimExt => "zero-dim-ext",
            TheoremTag::GeneralEvidence => "general-evidence",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: i64,
    pub e: u32,
    pub vanishes: bool,
}

/// Ring and input data the routing relied on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preconditions {
    pub dim: usize,
    pub is_cm: bool,
    pub is_ci: bool,
    pub e_threshold: u32,
    pub r_window: usize,
    pub window: usize,
    pub t: i64,
    pub sup_h: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub theorem_used: Option<TheoremTag>,
    pub witnesses: Vec<Witness>,
    pub oracle_pd: Option<ProjDim>,
    pub preconditions: Option<Preconditions>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub tables: Vec<FrobTable>,
    #[serde(skip)]
    pub resource_exhausted: bool,
}

impl Verdict {
    fn new(outcome: Outcome, theorem_used: Option<TheoremTag>) -> Self {
        Verdict {
            outcome,
            theorem_used,
            witnesses: Vec::new(),
            oracle_pd: None,
            preconditions: None,
            notes: Vec::new(),
            tables: Vec::new(),
            resource_exhausted: false,
        }
    }
}

/// What [`decide_flat_dimension`] is asked about.
#[derive(Clone, Copy, Debug)]
pub enum FlatInput<'a> {
    Module(&'a PresentedModule),
    Complex(&'a FreeComplex),
}

impl<'a> From<&'a PresentedModule> for FlatInput<'a> {
    fn from(m: &'a PresentedModule) -> Self {
        FlatInput::Module(m)
    }
}

impl<'a> From<&'a FreeComplex> for FlatInput<'a> {
    fn from(c: &'a FreeComplex) -> Self {
        FlatInput::Complex(c)
    }
}

fn window_witnesses(table: &FrobTable) -> Vec<Witness> {
    table.cells.iter().map(|(&(i, e), c)| Witness { i, e, vanishes: c.vanishes }).collect()
}

/// Routes an instance to the sharpest applicable criterion.
///
/// A single nonvanishing Tor cell above sup H always gives `InfiniteFlatDim`.
/// Positive verdicts come only from the CI and CM-threshold results; vanishing
/// windows for finitely many e on other rings are reported as evidence.
pub fn decide_flat_dimension<'a>(
    r: &QuotientRing,
    input: impl Into<FlatInput<'a>>,
    cfg: &CriterionConfig,
) -> Result<Verdict> {
    let input = input.into();
    let cfg = cfg.validated()?;
    let ring_of_input = match input {
        FlatInput::Module(m) => m.ring(),
        FlatInput::Complex(c) => c.ring(),
    };
    if !ring_of_input.same_ring(r) {
        return Err(Error::Mismatch("input is not over the given ring".into()));
    }
    if cfg.mode == Mode::ZeroDim {
        let FlatInput::Module(m) = input else {
            return Err(Error::Invalid("the zero-dimensional criterion takes a module".into()));
        };
        return decide_zero_dim_list(r, m, &cfg);
    }
    let inv = r.invariants()?;
    let window = cfg.window.unwrap_or(inv.r_window);

    let sup_h = match input {
        FlatInput::Module(m) => {
            if m.is_zero()? {
                return Err(Error::Invalid("the zero module".into()));
            }
            Some(0)
        }
        FlatInput::Complex(c) => sup_homology(c)?,
    };
    let Some(sup_h) = sup_h else {
        return Err(Error::Invalid("the input complex is exact".into()));
    };
    if cfg.t <= sup_h {
        return Err(Error::Precondition(format!("t = {} must exceed sup H = {sup_h}", cfg.t)));
    }
    let pre = Preconditions {
        dim: inv.dim,
        is_cm: inv.is_cm,
        is_ci: inv.is_ci,
        e_threshold: inv.e_threshold,
        r_window: inv.r_window,
        window,
        t: cfg.t,
        sup_h: Some(sup_h),
    };

    let mut notes = Vec::new();
    let mut exhausted = false;
    let mut tables: Vec<FrobTable> = Vec::new();
    let run = || -> Result<FreeComplex> {
        match input {
            FlatInput::Module(m) => {
                let steps = usize::try_from(cfg.t).expect("t >= 1 for modules") + window;
                Ok(minimal_free_resolution(m, steps)?.complex)
            }
            FlatInput::Complex(c) => Ok(c.clone()),
        }
    };
    match run() {
        Ok(complex) => {
            for &e in &cfg.e_list {
                match tor_frobenius_complex(&complex, cfg.t, window, e) {
                    Ok(t) => tables.push(t),
                    Err(Error::ResourceExceeded(msg)) => {
                        notes.push(format!("resource budget exceeded at e = {e}: {msg}"));
                        exhausted = true;
                        break;
                    }
                    Err(err) => return Err(err),
                }
            }
        }
        Err(Error::ResourceExceeded(msg)) => {
            notes.push(format!("resource budget exceeded while resolving: {msg}"));
            exhausted = true;
        }
        Err(err) => return Err(err),
    }

    let mut verdict = route(&cfg, &pre, &tables, exhausted);
    verdict.notes.splice(0..0, notes);
    verdict.preconditions = Some(pre);
    verdict.tables = tables;
    verdict.resource_exhausted = exhausted;
    if let FlatInput::Module(m) = input {
        match projective_dimension_oracle(m) {
            Ok(pd) => verdict.oracle_pd = Some(pd),
            Err(Error::ResourceExceeded(msg)) => verdict.notes.push(format!("oracle not run to completion: {msg}")),
            Err(err) => return Err(err),
        }
    }
    Ok(verdict)
}

fn route(cfg: &CriterionConfig, pre: &Preconditions, tables: &[FrobTable], exhausted: bool) -> Verdict {
    // (1) Unconditional negative route.
    for t in tables {
        if let Some((i, e)) = t.first_nonvanishing() {
            let mut v = Verdict::new(Outcome::InfiniteFlatDim, Some(TheoremTag::PsDirection));
            v.witnesses.push(Witness { i, e, vanishes: false });
            v.notes
                .push(format!("Tor_{i}(^{e}R, M) != 0 with i > sup H; finite flat dimension would force it to vanish"));
            return v;
        }
    }
    let use_ci = matches!(cfg.mode, Mode::Auto | Mode::ForceD);
    let use_cm = matches!(cfg.mode, Mode::Auto | Mode::ForceC);
    let mut notes = Vec::new();

    // (2) Complete intersections: one vanishing cell suffices.
    if use_ci {
        if pre.is_ci {
            if let Some((&(i, e), _)) = tables.iter().flat_map(|t| t.cells.iter()).find(|(_, c)| c.vanishes) {
                let mut v = Verdict::new(Outcome::FiniteFlatDim, Some(TheoremTag::CompleteIntersection));
                v.witnesses.push(Witness { i, e, vanishes: true });
                v.notes.push(format!("R is a complete intersection and Tor_{i}(^{e}R, M) = 0 with i > sup H"));
                return v;
            }
        } else if cfg.mode == Mode::ForceD {
            notes.push("CI path unavailable: R is not a complete intersection".to_string());
        }
    }

    // (3) Cohen–Macaulay rings: a full window at one e above the threshold.
    if use_cm {
        if !pre.is_cm {
            if cfg.mode == Mode::ForceC {
                notes.push("CM path unavailable: R is not Cohen-Macaulay".to_string());
            }
        } else if pre.window < pre.r_window {
            notes.push(format!("CM path unavailable: window {} is shorter than r = {}", pre.window, pre.r_window));
        } else {
            for t in tables.iter().filter(|t| t.all_vanish()) {
                if t.e >= pre.e_threshold {
                    let mut v = Verdict::new(Outcome::FiniteFlatDim, Some(TheoremTag::CmThreshold));
                    v.witnesses = window_witnesses(t);
                    v.notes.push(format!(
                        "R is Cohen-Macaulay, e = {} >= e_threshold = {}, and Tor vanishes for {} <= i <= {}",
                        t.e,
                        pre.e_threshold,
                        t.t,
                        t.t + t.window as i64 - 1
                    ));
                    return v;
                }
                notes.push(format!(
                    "window vanishes at e = {} but e < e_threshold = {}; the CM criterion does not apply",
                    t.e, pre.e_threshold
                ));
            }
        }
    }

    // (4) Evidence only.
    let mut v = Verdict::new(Outcome::Inconclusive, None);
    if !exhausted && !tables.is_empty() && tables.iter().all(FrobTable::all_vanish) {
        v.theorem_used = Some(TheoremTag::GeneralEvidence);
        v.witnesses = tables.iter().flat_map(window_witnesses).collect();
        notes.push(format!(
            "Tor vanishes on the window for every e in {:?}; finite flat dimension follows if this persists for infinitely many e",
            cfg.e_list
        ));
    }
    v.notes = notes;
    v
}

fn decide_zero_dim_list(r: &QuotientRing, m: &PresentedModule, cfg: &CriterionConfig) -> Result<Verdict> {
    let i = usize::try_from(cfg.t)
        .ok()
        .filter(|&i| i > 0)
        .ok_or_else(|| Error::Precondition("the zero-dimensional criterion needs i = t > 0".into()))?;
    let mut last = None;
    for &e in &cfg.e_list {
        let v = decide_injectivity_zero_dim(r, m, e, i)?;
        if v.outcome != Outcome::Inconclusive {
            return Ok(v);
        }
        last = Some(v);
    }
    Ok(last.expect("nonempty e list"))
}

/// Injectivity of `M` over a zero-dimensional ring from a single
/// `Ext^i(ᵉR, M)` with `p^e >= λ(R)`, cross-checked against `Ext^1(k, M)`.
pub fn decide_injectivity_zero_dim(r: &QuotientRing, m: &PresentedModule, e: u32, i: usize) -> Result<Verdict> {
    if !m.ring().same_ring(r) {
        return Err(Error::Mismatch("module is not over the given ring".into()));
    }
    let inv = r.invariants()?;
    if inv.dim != 0 {
        return Err(Error::Precondition(format!("ring has dimension {}, not 0", inv.dim)));
    }
    if i == 0 {
        return Err(Error::Precondition("Ext index must be positive".into()));
    }
    let lambda = inv.length.expect("zero-dimensional rings have finite length");
    let q = pow_sat(r.characteristic(), e);
    let pre = Preconditions {
        dim: 0,
        is_cm: inv.is_cm,
        is_ci: inv.is_ci,
        e_threshold: crate::invariants::log_threshold(r.characteristic(), lambda),
        r_window: inv.r_window,
        window: 1,
        t: i as i64,
        sup_h: None,
    };
    if q < lambda {
        let mut v = Verdict::new(Outcome::Inconclusive, Some(TheoremTag::ZeroDimExt));
        v.notes.push(format!(
            "precondition failed: p^e = {q} < λ(R) = {lambda}; need e >= log_p λ(R), i.e. e >= {}",
            pre.e_threshold
        ));
        v.preconditions = Some(pre);
        return Ok(v);
    }
    let table = ext_frobenius(m, i, 1, e)?;
    let cell = table.cells[&(i as i64, e)];
    let cross = ext_module(&PresentedModule::residue_field(r), m, 1, false)?;
    if cell.vanishes != cross.vanishes {
        return Err(Error::Invalid(format!(
            "cross-check failed: Ext^{i}(^{e}R, M) vanishes = {}, Ext^1(k, M) vanishes = {}",
            cell.vanishes, cross.vanishes
        )));
    }
    let mut v = if cell.vanishes {
        let mut v = Verdict::new(Outcome::Injective, Some(TheoremTag::ZeroDimExt));
        v.notes.push(format!("Ext^{i}(^{e}R, M) = 0 with p^e = {q} >= λ(R) = {lambda}; cross-check Ext^1(k, M) = 0"));
        v
    } else {
        let mut v = Verdict::new(Outcome::NotInjective, Some(TheoremTag::ZeroDimExt));
        v.notes.push(format!("Ext^{i}(^{e}R, M) != 0, so M is not injective; cross-check Ext^1(k, M) != 0"));
        v
    };
    v.witnesses.push(Witness { i: i as i64, e, vanishes: cell.vanishes });
    v.preconditions = Some(pre);
    v.tables.push(table);
    Ok(v)
}

fn pow_sat(p: u32, e: u32) -> u64 {
    (p as u64).checked_pow(e).unwrap_or(u64::MAX)
}

/// True iff a `FiniteFlatDim` or `Injective` verdict's recorded preconditions
/// license it. Other outcomes are always sound.
pub fn preconditions_hold(v: &Verdict, r: &QuotientRing) -> Result<bool> {
    let inv = r.invariants()?;
    let Some(pre) = &v.preconditions else {
        return Ok(!matches!(v.outcome, Outcome::FiniteFlatDim | Outcome::Injective));
    };
    let consistent =
        pre.dim == inv.dim && pre.is_cm == inv.is_cm && pre.is_ci == inv.is_ci && pre.r_window == inv.dim.max(1);
    let above = |w: &Witness| pre.sup_h.is_none_or(|s| w.i > s);
    Ok(match (v.outcome, v.theorem_used) {
        (Outcome::FiniteFlatDim, Some(TheoremTag::CompleteIntersection)) => {
            consistent && inv.is_ci && v.witnesses.iter().any(|w| w.vanishes && w.e >= 1 && above(w))
        }
        (Outcome::FiniteFlatDim, Some(TheoremTag::CmThreshold)) => {
            let e = v.witnesses.first().map(|w| w.e).unwrap_or(0);
            consistent
                && inv.is_cm
                && pre.window >= inv.r_window
                && e >= inv.e_threshold
                && pow_sat(r.characteristic(), e) >= inv.multiplicity
                && v.witnesses.len() == pre.window
                && v.witnesses.iter().all(|w| w.vanishes && w.e == e && above(w))
        }
        (Outcome::Injective, Some(TheoremTag::ZeroDimExt)) => {
            let lambda = inv.length.unwrap_or(u64::MAX);
            consistent
                && inv.dim == 0
                && v.witnesses.iter().any(|w| w.vanishes && w.i > 0 && pow_sat(r.characteristic(), w.e) >= lambda)
        }
        (Outcome::FiniteFlatDim, _) | (Outcome::Injective, _) => false,
        (Outcome::InfiniteFlatDim, Some(TheoremTag::PsDirection)) => {
            v.witnesses.iter().any(|w| !w.vanishes && above(w))
        }
        (Outcome::InfiniteFlatDim, _) => false,
        _ => true,
    })
}
