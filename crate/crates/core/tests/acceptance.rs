//! Acceptance gate: one PASS/FAIL line per criterion.

use std::path::Path;
use std::time::Instant;

use frobdim::corpus::{corpus_files, seeded_modules};
use frobdim::criteria::{decide_injectivity_zero_dim, Mode};
use frobdim::frobenius::{tor_frobenius_complex, tor_frobenius_via_pushforward};
use frobdim::input::read_input;
use frobdim::invariants::hilbert_numerator_from_resolution;
use frobdim::{
    decide_flat_dimension, ext_frobenius, ext_module, finite_length_dual, hilbert_numerator, minimal_free_resolution,
    projective_dimension_oracle, tor_frobenius, CriterionConfig, Outcome, PresentedModule, QuotientRing, TheoremTag,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ring(p: u64, vars: &[&str], ideal: &[&str]) -> QuotientRing {
    QuotientRing::parse(p, vars, ideal).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cyclic(r: &QuotientRing, gens: &[&str]) -> PresentedModule {
    let g: Vec<_> = gens.iter().map(|s| r.poly().parse(s).unwrap()).collect();
    PresentedModule::cyclic(r, &g).unwrap()
}

fn criterion_1() -> Check {
    let mut modules = 0;
    let mut cells = 0;
    for (p, seed) in [(2u64, 101u64), (3, 202)] {
        let s = ring(p, &["x", "y"], &[]);
        for (k, m) in seeded_modules(&s, seed, 25).iter().enumerate() {
            modules += 1;
            for e in 1..=2 {
                let t = tor_frobenius(m, 1, 3, e).map_err(err)?;
                cells += t.cells.len();
                ensure(t.all_vanish(), || {
                    format!("p={p} module #{k} e={e}: nonvanishing cell {:?}", t.first_nonvanishing())
                })?;
            }
        }
    }
    Ok(format!("{modules} modules, {cells} cells, 0 failures"))
}

fn criterion_2() -> Check {
    let rings = [
        (ring(2, &["x"], &["x^2"]), None, 11u64),
        (ring(2, &["x", "y"], &["x*y"]), Some("x+y"), 12),
        (ring(3, &["x", "y"], &["x^2"]), Some("y"), 13),
    ];
    let mut total = 0;
    for (r, lin, seed) in &rings {
        let mut modules = vec![PresentedModule::residue_field(r), PresentedModule::free(r, 1)];
        if let Some(l) = lin {
            modules.push(cyclic(r, &[l]));
        }
        let need = 10 - modules.len();
        modules.extend(seeded_modules(r, *seed, need));
        for (k, m) in modules.iter().enumerate() {
            let v = decide_flat_dimension(r, m, &CriterionConfig::new(vec![1], 1)).map_err(err)?;
            let pd = projective_dimension_oracle(m).map_err(err)?;
            ensure((v.outcome == Outcome::FiniteFlatDim) == pd.is_finite(), || {
                format!("{r:?} module #{k}: verdict {} but oracle pd {pd}", v.outcome)
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} modules over 3 rings, 0 disagreements"))
}

fn criterion_3() -> Check {
    let r = ring(2, &["x", "y"], &["x^3"]);
    let inv = r.invariants().map_err(err)?;
    ensure((inv.multiplicity, inv.e_threshold, inv.dim, inv.r_window) == (3, 2, 1, 1), || {
        format!("invariants {inv:?}")
    })?;
    let free = PresentedModule::free(&r, 1);
    let k = PresentedModule::residue_field(&r);
    let cfg = |e: Vec<u32>| CriterionConfig::new(e, 1).with_mode(Mode::ForceC);

    let v1 = decide_flat_dimension(&r, &free, &cfg(vec![1])).map_err(err)?;
    ensure(v1.tables.iter().all(|t| t.all_vanish()), || "window at e=1 should vanish for M = R".into())?;
    ensure(v1.outcome == Outcome::Inconclusive, || format!("e=1 alone gave {}", v1.outcome))?;
    let v2 = decide_flat_dimension(&r, &free, &cfg(vec![2])).map_err(err)?;
    ensure(v2.outcome == Outcome::FiniteFlatDim && v2.theorem_used == Some(TheoremTag::CmThreshold), || {
        format!("e=2 gave {} via {:?}", v2.outcome, v2.theorem_used)
    })?;
    let v12 = decide_flat_dimension(&r, &free, &cfg(vec![1, 2])).map_err(err)?;
    ensure(v12.outcome == Outcome::FiniteFlatDim && v12.witnesses.iter().all(|w| w.e == 2), || {
        format!("e=[1,2] gave {} with {:?}", v12.outcome, v12.witnesses)
    })?;
    for e in [vec![1], vec![2]] {
        let v = decide_flat_dimension(&r, &k, &cfg(e.clone())).map_err(err)?;
        ensure(v.outcome == Outcome::InfiniteFlatDim, || format!("M = k at e={e:?} gave {}", v.outcome))?;
    }
    Ok("e=1 refused, e=2 granted for M = R; M = k InfiniteFlatDim".into())
}

fn criterion_4() -> Check {
    let gor = ring(2, &["x"], &["x^2"]);
    let fat = ring(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
    let free = PresentedModule::free(&gor, 1);
    let v = decide_injectivity_zero_dim(&gor, &free, 1, 1).map_err(err)?;
    ensure(v.outcome == Outcome::Injective, || format!("R over F_2[x]/(x^2): {}", v.outcome))?;
    let ext_k = ext_module(&PresentedModule::residue_field(&gor), &free, 1, false).map_err(err)?;
    ensure(ext_k.vanishes, || "Ext^1(k, R) should vanish".into())?;
    let ext_frob = ext_frobenius(&free, 1, 1, 1).map_err(err)?;
    ensure(ext_frob.all_vanish(), || "Ext^1(^1R, R) should vanish".into())?;

    for (r, e_ok, e_low) in [(&gor, 1u32, 0u32), (&fat, 2, 1)] {
        let k = PresentedModule::residue_field(r);
        for e in e_ok..=e_ok + 1 {
            for i in 1..=2 {
                let v = decide_injectivity_zero_dim(r, &k, e, i).map_err(err)?;
                ensure(v.outcome == Outcome::NotInjective, || format!("k over {r:?}, e={e}, i={i}: {}", v.outcome))?;
            }
        }
        let v = decide_injectivity_zero_dim(r, &PresentedModule::free(r, 1), e_low, 1).map_err(err)?;
        ensure(
            v.outcome == Outcome::Inconclusive
                && v.notes.iter().any(|n| n.contains("precondition failed") && n.contains("λ(R)")),
            || format!("sub-threshold e={e_low} over {r:?}: {} {:?}", v.outcome, v.notes),
        )?;
    }
    let v = decide_injectivity_zero_dim(&fat, &PresentedModule::free(&fat, 1), 2, 1).map_err(err)?;
    ensure(v.outcome != Outcome::Injective, || "non-Gorenstein R decided injective".into())?;
    Ok("R injective over the Gorenstein ring, k never injective, sub-threshold e rejected".into())
}

fn criterion_5() -> Check {
    let rings = [
        ring(2, &["x"], &["x^2"]),
        ring(2, &["x", "y"], &["x^2", "x*y", "y^2"]),
        ring(2, &["x", "y"], &["x*y"]),
        ring(3, &["x", "y"], &["x^2"]),
        ring(2, &["x", "y"], &["x^3"]),
        ring(2, &["x", "y"], &["x^2", "x*y"]),
    ];
    let mut instances = 0;
    let mut compared_dims = 0;
    for (n, r) in rings.iter().enumerate() {
        let mut modules = vec![PresentedModule::residue_field(r)];
        modules.extend(seeded_modules(r, 500 + n as u64, 2));
        for (k, m) in modules.iter().enumerate() {
            let res = minimal_free_resolution(m, 4).map_err(err)?;
            for e in 1..=2 {
                let twist = tor_frobenius_complex(&res.complex, 1, 3, e).map_err(err)?;
                for i in 1..=3usize {
                    let a = twist.cells[&(i as i64, e)];
                    let b = tor_frobenius_via_pushforward(m, i, e).map_err(err)?;
                    ensure(a.vanishes == b.vanishes, || format!("{r:?} module #{k} i={i} e={e}: {a:?} vs {b:?}"))?;
                    if let (Some(x), Some(y)) = (a.dim_k, b.dim_k) {
                        ensure(x == y, || format!("{r:?} module #{k} i={i} e={e}: dim {x} vs {y}"))?;
                        compared_dims += 1;
                    }
                    instances += 1;
                }
            }
        }
    }
    Ok(format!("{instances} instances, {compared_dims} dimension comparisons, 0 disagreements"))
}

fn criterion_6() -> Check {
    let rings = [(ring(2, &["x"], &["x^2"]), 61u64), (ring(2, &["x", "y"], &["x^2", "x*y", "y^2"]), 62)];
    let mut checks = 0;
    for (r, seed) in &rings {
        let mut modules = vec![PresentedModule::residue_field(r), PresentedModule::free(r, 1)];
        modules.extend(seeded_modules(r, *seed, 4));
        for (k, m) in modules.iter().enumerate() {
            let dual = finite_length_dual(m).map_err(err)?;
            ensure(dual.length().map_err(err)? == m.length().map_err(err)?, || format!("module #{k}: λ(M^v) != λ(M)"))?;
            let res = minimal_free_resolution(m, 3).map_err(err)?;
            let tor = tor_frobenius_complex(&res.complex, 0, 3, 1).map_err(err)?;
            let ext = ext_frobenius(&dual, 0, 3, 1).map_err(err)?;
            for i in 0..=2i64 {
                let a = tor.cells[&(i, 1)].dim_k;
                let b = ext.cells[&(i, 1)].dim_k;
                ensure(a.is_some() && a == b, || format!("{r:?} module #{k} i={i}: Tor dim {a:?} vs Ext dim {b:?}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (M, i) pairs, 0 failures"))
}

fn criterion_7() -> Check {
    let corpus_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut rings: Vec<QuotientRing> = corpus_files(&corpus_dir)
        .map_err(err)?
        .iter()
        .map(|p| read_input(p, frobdim::groebner::DEFAULT_STEP_BUDGET).map(|f| f.ring))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    rings.push(ring(3, &["x", "y", "z"], &["x*y", "y*z", "x*z"]));
    rings.push(ring(2, &["x", "y", "z"], &["x^2 + y*z", "y^3"]));
    for r in &rings {
        let a = hilbert_numerator(r);
        let b = hilbert_numerator_from_resolution(r).map_err(err)?;
        ensure(a == b, || format!("{r:?}: recursion {:?} vs resolution {:?}", a.0, b.0))?;
    }
    let s = ring(2, &["x", "y", "z"], &[]);
    let betti = minimal_free_resolution(&PresentedModule::residue_field(&s), 3).map_err(err)?.betti;
    ensure(betti == vec![1, 3, 3, 1], || format!("Koszul Betti numbers {betti:?}"))?;
    let e = ring(2, &["x", "y"], &["x^3"]).invariants().map_err(err)?.multiplicity;
    ensure(e == 3, || format!("e(F_2[x,y]/(x^3)) = {e}"))?;
    let inv = ring(2, &["x", "y"], &["x^2", "x*y"]).invariants().map_err(err)?;
    ensure(inv.depth == 0 && inv.dim == 1 && !inv.is_cm, || format!("F_2[x,y]/(x^2,xy): {inv:?}"))?;
    Ok(format!("{} rings agree; Betti {:?}; e = 3; depth 0, dim 1", rings.len(), betti))
}

fn criterion_8() -> Check {
    let r = ring(2, &["x", "y"], &["x^3"]);
    let mut modules = vec![
        PresentedModule::residue_field(&r),
        PresentedModule::free(&r, 1),
        cyclic(&r, &["y"]),
        cyclic(&r, &["x"]),
        cyclic(&r, &["x^2"]),
        cyclic(&r, &["x + y"]),
    ];
    modules.extend(seeded_modules(&r, 88, 10));
    let mut compared = 0;
    for (k, m) in modules.iter().enumerate() {
        for mode in [Mode::Auto, Mode::ForceC] {
            for e_list in [vec![1], vec![2], vec![1, 2]] {
                let base = CriterionConfig::new(e_list.clone(), 1).with_mode(mode);
                let d = decide_flat_dimension(&r, m, &base.clone().with_window(1)).map_err(err)?;
                let d1 = decide_flat_dimension(&r, m, &base.with_window(2)).map_err(err)?;
                ensure(d.outcome == d1.outcome, || {
                    format!(
                        "module #{k} {mode:?} e={e_list:?}: window 1 gives {}, window 2 gives {}",
                        d.outcome, d1.outcome
                    )
                })?;
                compared += 1;
            }
        }
    }
    Ok(format!("{} modules, {compared} decisions compared, 0 disagreements", modules.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("regular-ring vanishing", criterion_1),
        ("CI criterion exactness", criterion_2),
        ("CM threshold semantics", criterion_3),
        ("zero-dimensional Ext criterion", criterion_4),
        ("two-route Tor agreement", criterion_5),
        ("duality dimension identity", criterion_6),
        ("invariant engine cross-checks", criterion_7),
        ("window sharpness", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.2}s]", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
