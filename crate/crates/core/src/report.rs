//! Versioned JSON reports and their plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::corpus::{CorpusReport, EntryStatus};
use crate::criteria::Verdict;
use crate::frobenius::{FrobTable, TableKind};
use crate::homology::HomologyInfo;
use crate::invariants::RingInvariants;
use crate::resolution::ProjDim;
use crate::ring::QuotientRing;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct RingBlock {
    pub p: u32,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    pub invariants: RingInvariants,
}

impl RingBlock {
    pub fn new(r: &QuotientRing, invariants: RingInvariants) -> Self {
        let p = r.poly();
        RingBlock {
            p: r.characteristic(),
            vars: p.var_names().to_vec(),
            ideal: r.ideal_generators().iter().map(|g| p.display(g)).collect(),
            invariants,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingBlock>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub tables: BTreeMap<String, HomologyInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_pd: Option<ProjDim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusReport>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            ring: None,
            tables: BTreeMap::new(),
            verdict: None,
            oracle_pd: None,
            betti: None,
            corpus: None,
        }
    }

    pub fn add_tables<'a>(&mut self, tables: impl IntoIterator<Item = &'a FrobTable>) {
        for t in tables {
            let name = match t.kind {
                TableKind::Tor => "Tor",
                TableKind::Ext => "Ext",
            };
            for (&(i, e), cell) in &t.cells {
                self.tables.insert(format!("{name}({i},{e})"), *cell);
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(r) = &self.ring {
            let inv = &r.invariants;
            let _ = writeln!(out, "ring      F_{}[{}]/({})", r.p, r.vars.join(","), r.ideal.join(", "));
            let _ = writeln!(
                out,
                "dim {}  depth {}  e(R) {}  length {}  CM {}  CI {}  e_threshold {}  r {}",
                inv.dim,
                inv.depth,
                inv.multiplicity,
                inv.length.map_or("inf".to_string(), |l| l.to_string()),
                inv.is_cm,
                inv.is_ci,
                inv.e_threshold,
                inv.r_window
            );
            let _ = writeln!(out, "hilbert numerator {:?}", inv.hilbert_numerator.0);
        }
        for (k, c) in &self.tables {
            let state = if c.vanishes { "0".to_string() } else { "nonzero".to_string() };
            let dim = c.dim_k.map_or(String::new(), |d| format!("  dim_k {d}"));
            let _ = writeln!(out, "{k:<12} {state}{dim}");
        }
        if let Some(b) = &self.betti {
            let _ = writeln!(out, "betti     {b:?}");
        }
        if let Some(pd) = &self.oracle_pd {
            let _ = writeln!(out, "pd        {pd}");
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(
                out,
                "verdict   {}  via {}",
                v.outcome,
                v.theorem_used.map_or("-".to_string(), |t| t.to_string())
            );
            for w in &v.witnesses {
                let _ = writeln!(
                    out,
                    "  witness (i={}, e={}) {}",
                    w.i,
                    w.e,
                    if w.vanishes { "vanishes" } else { "nonzero" }
                );
            }
            if let Some(pd) = &v.oracle_pd {
                let _ = writeln!(out, "  oracle pd {pd}");
            }
            for n in &v.notes {
                let _ = writeln!(out, "  {n}");
            }
        }
        if let Some(c) = &self.corpus {
            for e in &c.entries {
                let status = match &e.status {
                    EntryStatus::Consistent => "ok".to_string(),
                    EntryStatus::Violation(m) => format!("VIOLATION {m}"),
                    EntryStatus::ResourceExceeded(m) => format!("budget {m}"),
                };
                let _ = writeln!(
                    out,
                    "{:<32} {:<16} pd {:<4} {}",
                    e.name,
                    e.outcome.map_or("-".to_string(), |o| o.to_string()),
                    e.oracle_pd.map_or("-".to_string(), |p| p.to_string()),
                    status
                );
            }
            let _ = writeln!(
                out,
                "{} entries, {} violations, {} over budget",
                c.entries.len(),
                c.violations,
                c.resource_exceeded
            );
        }
        out
    }
}
