//! Theorem suites swept over a corpus, and the run report they produce.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{delta_embedding, AlgebraElement, StarAlgebra};
use crate::corpus::{CorpusSpec, Family, Instance};
use crate::criteria::{
    augmentation_certificate, random_subgroupoid, verify_aug_ideal, verify_central_norm_ideal, verify_eta_positivity,
    verify_open_subgroupoid_isometry, verify_reg_simple, verify_simple_dom, verify_simplicity_theorems, Inclusion,
    PositiveDefiniteFunction,
};
use crate::error::{Error, Result};
use crate::linalg::op_norm;
use crate::spectral::{block_decomposition, gns, ideal_generated_by, norm, unif_ideal, BlockDecomposition};
use crate::transformation::TransformationGroupoid;

pub const SCHEMA_VERSION: u32 = 1;
pub const NORM_TOL: f64 = 1e-7;
pub const COEFF_TOL: f64 = 1e-9;
pub const UNIT_TOL: f64 = 1e-8;
pub const THETA_SAMPLES: usize = 50;
pub const RANDOM_SUBGROUPOIDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Axioms,
    Norms,
    Dominance,
    Minimality,
    Simplicity,
    Augmentation,
    Delta,
    Appendix,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Axioms,
        Suite::Norms,
        Suite::Dominance,
        Suite::Minimality,
        Suite::Simplicity,
        Suite::Augmentation,
        Suite::Delta,
        Suite::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Norms => "norms",
            Suite::Dominance => "dominance",
            Suite::Minimality => "minimality",
            Suite::Simplicity => "simplicity",
            Suite::Augmentation => "augmentation",
            Suite::Delta => "delta",
            Suite::Appendix => "appendix",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Statements a check can be anchored to.
pub const ANCHORS: &[(&str, &str)] = &[
    ("convolution-algebra", "C_c(G) is an associative *-algebra whose full norm is a C*-norm"),
    ("full-norm-bound", "the full norm is dominated by the I-norm"),
    ("block-structure", "a finite-dimensional C*-algebra is a direct sum of full matrix blocks"),
    ("ideal-lattice", "closed two-sided ideals are exactly the sums of blocks"),
    ("continuous-reduction", "p_unif_q = p_E_q at every unit of a group bundle"),
    ("relative-dominance", "intersections of J_unif_q over simple quotients are dominant relative to C(G0)"),
    ("simple-essential", "simple quotients with trivial common kernel force an essential inclusion"),
    ("essential-dominance", "an inclusion is essential iff the zero ideal is dominant"),
    ("central-normalizer-ideals", "conjugation preserves C_0,q pieces iff it preserves J_unif_q"),
    ("regular-simplicity", "for a regular inclusion, A is simple iff the inclusion is essential and minimal"),
    ("groupoid-minimality", "C(G0) is a minimal inclusion iff G is minimal"),
    ("simplicity-criterion", "C*(G) simple iff G minimal and topologically principal iff C*(IntIso G) is minimal"),
    ("action-dictionary", "for G x Q: minimal iff one orbit, principal iff free stabilizers"),
    ("augmentation-ideal", "the augmentation ideal is nonzero exactly off the unit space, proper and normalizer-invariant"),
    ("isotropy-obstruction", "nontrivial interior isotropy certifies non-simplicity via the augmentation ideal"),
    ("crossed-product-dictionary", "Upsilon is a *-isomorphism onto the crossed product"),
    ("delta-embedding", "Delta is an injective, isometric *-homomorphism on the isotropy subalgebra"),
    ("pd-extension", "positive definite functions on isotropy give positive functionals"),
    ("subgroupoid-isometry", "C*(Y) sits isometrically in C*(G) for open subgroupoids Y"),
];

/// Every check a suite may emit, with its suite and anchor.
pub const CHECKS: &[(&str, Suite, &str)] = &[
    ("associativity", Suite::Axioms, "convolution-algebra"),
    ("involution", Suite::Axioms, "convolution-algebra"),
    ("c-star-identity", Suite::Axioms, "convolution-algebra"),
    ("norm-below-i-norm", Suite::Axioms, "full-norm-bound"),
    ("block-dimensions", Suite::Norms, "block-structure"),
    ("idempotents-sum-to-unit", Suite::Norms, "block-structure"),
    ("blockwise-norm", Suite::Norms, "block-structure"),
    ("ideal-closure", Suite::Norms, "ideal-lattice"),
    ("p-unif-equals-p-e", Suite::Norms, "continuous-reduction"),
    ("simple-dom", Suite::Dominance, "relative-dominance"),
    ("simple-essential", Suite::Dominance, "simple-essential"),
    ("essential-iff-zero-dominant", Suite::Dominance, "essential-dominance"),
    ("central-norm-ideal", Suite::Dominance, "central-normalizer-ideals"),
    ("reg-simple", Suite::Minimality, "regular-simplicity"),
    ("units-minimal-iff-groupoid-minimal", Suite::Minimality, "groupoid-minimality"),
    ("simplicity-equivalence", Suite::Simplicity, "simplicity-criterion"),
    ("action-dictionary", Suite::Simplicity, "action-dictionary"),
    ("aug-ideal", Suite::Augmentation, "augmentation-ideal"),
    ("isotropy-certificate", Suite::Augmentation, "isotropy-obstruction"),
    ("upsilon", Suite::Delta, "crossed-product-dictionary"),
    ("delta-homomorphism", Suite::Delta, "delta-embedding"),
    ("delta-isometry", Suite::Delta, "delta-embedding"),
    ("delta-support", Suite::Delta, "delta-embedding"),
    ("eta-positivity", Suite::Appendix, "pd-extension"),
    ("isometry-units", Suite::Appendix, "subgroupoid-isometry"),
    ("isometry-intiso", Suite::Appendix, "subgroupoid-isometry"),
    ("isometry-random", Suite::Appendix, "subgroupoid-isometry"),
];

/// Every check names a registered anchor and appears once.
pub fn validate_registry() -> Result<()> {
    for (i, (name, _, anchor)) in CHECKS.iter().enumerate() {
        if !ANCHORS.iter().any(|(a, _)| a == anchor) {
            return Err(Error::Parse(format!("check `{name}` names unregistered anchor `{anchor}`")));
        }
        if CHECKS[..i].iter().any(|(other, _, _)| other == name) {
            return Err(Error::Parse(format!("check `{name}` registered twice")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub anchor: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &'static str, failure: Option<String>) -> Self {
        let anchor = CHECKS
            .iter()
            .find(|(n, _, _)| *n == name)
            .map(|(_, _, a)| *a)
            .unwrap_or_else(|| panic!("check `{name}` missing from the registry"));
        Check { name, anchor, pass: failure.is_none(), witness: failure }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub id: usize,
    pub instance: String,
    pub family: Family,
    pub elements: usize,
    pub units: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub seed: u64,
    pub corpus: CorpusSpec,
    pub suites: Vec<Suite>,
    pub instances: Vec<InstanceReport>,
    pub checks: usize,
    pub failures: usize,
    pub pass: bool,
    /// Wall-clock time; left out of the JSON so reports stay byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(["id", "instance", "check", "anchor", "pass", "witness"]).map_err(io)?;
        for inst in &self.instances {
            for c in &inst.checks {
                let id = inst.id.to_string();
                let pass = c.pass.to_string();
                let row = [id.as_str(), &inst.instance, c.name, c.anchor, &pass, c.witness.as_deref().unwrap_or("")];
                out.write_record(row).map_err(io)?;
            }
        }
        out.flush()?;
        Ok(())
    }

    /// `(instance, check)` names of every failed check.
    pub fn failed_checks(&self) -> Vec<(String, &'static str)> {
        self.instances
            .iter()
            .flat_map(|i| i.checks.iter().filter(|c| !c.pass).map(move |c| (i.instance.clone(), c.name)))
            .collect()
    }
}

/// Per-instance state shared by the suites.
struct Ctx<'a> {
    inst: &'a Instance,
    alg: StarAlgebra,
    dec: BlockDecomposition,
    samples: usize,
}

fn fail_if(bad: bool, witness: impl FnOnce() -> String) -> Option<String> {
    bad.then(witness)
}

fn axioms(c: &Ctx, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let alg = &c.alg;
    let n = alg.dim();
    let (mut assoc, mut invol, mut cstar, mut inorm) = (None, None, None, None);
    for k in 0..c.samples {
        let f = AlgebraElement::random(rng, n);
        let g = AlgebraElement::random(rng, n);
        let h = AlgebraElement::random(rng, n);
        let left = alg.convolve(&alg.convolve(&f, &g)?, &h)?;
        let right = alg.convolve(&f, &alg.convolve(&g, &h)?)?;
        let err = (&left - &right).max_abs();
        if assoc.is_none() && err > NORM_TOL {
            assoc = Some(format!("sample {k}: |(fg)h - f(gh)| = {err:e}"));
        }
        let fg_star = alg.involution(&alg.convolve(&f, &g)?);
        let gs_fs = alg.convolve(&alg.involution(&g), &alg.involution(&f))?;
        let err = (&fg_star - &gs_fs).max_abs().max((&alg.involution(&alg.involution(&f)) - &f).max_abs());
        if invol.is_none() && err > COEFF_TOL {
            invol = Some(format!("sample {k}: involution defect {err:e}"));
        }
        let nf = norm(alg, &f);
        let nff = norm(alg, &alg.convolve(&alg.involution(&f), &f)?);
        if cstar.is_none() && (nff - nf * nf).abs() > NORM_TOL {
            cstar = Some(format!("sample {k}: |f*f| = {nff}, |f|^2 = {}", nf * nf));
        }
        let ni = alg.i_norm(&f);
        if inorm.is_none() && nf > ni + NORM_TOL {
            inorm = Some(format!("sample {k}: |f| = {nf} > |f|_I = {ni}"));
        }
    }
    Ok(vec![
        Check::new("associativity", assoc),
        Check::new("involution", invol),
        Check::new("c-star-identity", cstar),
        Check::new("norm-below-i-norm", inorm),
    ])
}

fn norms(c: &Ctx, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (alg, dec) = (&c.alg, &c.dec);
    let n = alg.dim();
    let total: usize = dec.dims().iter().map(|d| d * d).sum();
    let dims = fail_if(total != n, || format!("sum d_i^2 = {total}, dim = {n}"));
    let sum = dec.idempotents().iter().fold(alg.zero(), |acc, e| &acc + e);
    let defect = (&sum - alg.unit()).max_abs();
    let unit = fail_if(defect > UNIT_TOL, || format!("|sum p_i - 1| = {defect:e}"));
    let mut blockwise = None;
    for k in 0..c.samples {
        let f = AlgebraElement::random(rng, n);
        let (a, b) = (dec.norm(alg, &f), norm(alg, &f));
        if (a - b).abs() > NORM_TOL {
            blockwise = Some(format!("sample {k}: blockwise {a}, regular {b}"));
            break;
        }
    }
    // a random generator closes up to a block-subset ideal, or the call errors
    let at = rng.random_range(0..n);
    let probe = AlgebraElement::random_on(rng, n, &[at]);
    let closure = match ideal_generated_by(alg, dec, std::slice::from_ref(&probe)) {
        Ok(ideal) => fail_if(ideal.blocks() != dec.blocks_touched(alg, &probe).as_slice(), || {
            format!("closure {:?} differs from touched blocks", ideal.blocks())
        }),
        Err(e) => Some(e.to_string()),
    };
    let mut checks = vec![
        Check::new("block-dimensions", dims),
        Check::new("idempotents-sum-to-unit", unit),
        Check::new("blockwise-norm", blockwise),
        Check::new("ideal-closure", closure),
    ];
    if c.alg.groupoid().is_group_bundle() {
        checks.push(Check::new("p-unif-equals-p-e", continuous_reduction(c, rng)?));
    }
    Ok(checks)
}

/// `p_unif_q` blockwise against `p_E_q` from the GNS representation of `δ_q`.
fn continuous_reduction(c: &Ctx, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let (alg, dec) = (&c.alg, &c.dec);
    for &q in alg.groupoid().units() {
        let kept = unif_ideal(alg, dec, q)?.complement();
        let rep = gns(alg, &alg.delta(q))?;
        for k in 0..c.samples {
            let f = AlgebraElement::random(rng, alg.dim());
            let norms = dec.block_norms(alg, &f);
            let unif = kept.iter().map(|&i| norms[i]).fold(0.0, f64::max);
            let e = op_norm(&rep.pi(alg, &f));
            if (unif - e).abs() > NORM_TOL {
                return Ok(Some(format!("unit {q}, sample {k}: p_unif {unif}, p_E {e}")));
            }
        }
    }
    Ok(None)
}

fn dominance(c: &Ctx) -> Result<Vec<Check>> {
    let (alg, dec) = (&c.alg, &c.dec);
    let g = alg.groupoid();
    let mut checks = Vec::new();
    if g.is_group_bundle() {
        let r = verify_simple_dom(alg, dec)?;
        checks.push(Check::new(
            "simple-dom",
            fail_if(!r.failures.is_empty(), || format!("non-dominant for Q0 = {:?}", r.failures[0])),
        ));
        checks.push(Check::new(
            "simple-essential",
            fail_if(r.essential_consequence == Some(false), || format!("Q_simple = {:?} but not essential", r.q_simple)),
        ));
    }
    let inc = Inclusion::units(alg, dec)?;
    let zero = crate::spectral::Ideal::zero(dec.len());
    let (ess, dom) = (inc.is_essential(), inc.is_dominant(&zero));
    checks.push(Check::new(
        "essential-iff-zero-dominant",
        fail_if(ess != dom, || format!("essential {ess}, zero dominant {dom}")),
    ));
    let r = verify_central_norm_ideal(alg, &g.interior_isotropy())?;
    checks.push(Check::new(
        "central-norm-ideal",
        fail_if(!r.mismatches.is_empty(), || format!("(gamma, q1, q2) = {:?}", r.mismatches[0])),
    ));
    Ok(checks)
}

fn minimality(c: &Ctx) -> Result<Vec<Check>> {
    let (alg, dec) = (&c.alg, &c.dec);
    let inc = Inclusion::units(alg, dec)?;
    let normalizers = alg.elementary_normalizers();
    let r = verify_reg_simple(&inc, &normalizers)?;
    let reg = fail_if(!r.holds, || {
        format!("simple {}, essential {}, minimal {}; {}", r.simple, r.essential, r.minimal, r.witness.clone().unwrap_or_default())
    });
    let gm = alg.groupoid().is_minimal();
    let orbits = fail_if(r.minimal != gm, || format!("inclusion minimal {}, groupoid minimal {gm}", r.minimal));
    Ok(vec![Check::new("reg-simple", reg), Check::new("units-minimal-iff-groupoid-minimal", orbits)])
}

fn simplicity(c: &Ctx) -> Result<Vec<Check>> {
    let r = verify_simplicity_theorems(&c.alg, &c.dec)?;
    let mut checks = vec![Check::new(
        "simplicity-equivalence",
        fail_if(!r.holds, || {
            format!(
                "oracle {}, minimal {}, principal {}, IntIso-minimal {}",
                r.oracle_simple, r.minimal, r.principal, r.intiso_minimal
            )
        }),
    )];
    if let Some(a) = &c.inst.action {
        let g = c.alg.groupoid();
        let one_orbit = a.orbit_count() == 1;
        let free = (0..a.space()).all(|q| a.stabilizer(q).len() == 1);
        checks.push(Check::new(
            "action-dictionary",
            fail_if(g.is_minimal() != one_orbit || g.is_topologically_principal() != free, || {
                format!("orbits {}, free {free}", a.orbit_count())
            }),
        ));
    }
    Ok(checks)
}

fn augmentation(c: &Ctx) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if c.alg.groupoid().is_group_bundle() {
        let r = verify_aug_ideal(&c.alg)?;
        checks.push(Check::new(
            "aug-ideal",
            fail_if(!r.holds, || {
                format!("nonzero {}, proper {}, invariant {}", r.nonzero, r.proper, r.normalizer_invariant)
            }),
        ));
    }
    let r = augmentation_certificate(&c.alg, &c.dec)?;
    checks.push(Check::new(
        "isotropy-certificate",
        fail_if(!r.holds, || {
            format!(
                "IntIso nontrivial {}, certified {}, oracle simple {}",
                r.intiso_nontrivial, r.certified_nonsimple, r.oracle_simple
            )
        }),
    ));
    Ok(checks)
}

fn delta(c: &Ctx, t: &TransformationGroupoid, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let alg = &c.alg;
    let n = alg.dim();
    let mut upsilon = None;
    for k in 0..c.samples {
        let f = AlgebraElement::random(rng, n);
        let g = AlgebraElement::random(rng, n);
        let (uf, ug) = (t.upsilon(&f)?, t.upsilon(&g)?);
        let back = t.upsilon_inverse(&uf);
        let prod = t.upsilon_inverse(&t.crossed_product(&uf, &ug));
        let star = t.upsilon_inverse(&t.crossed_involution(&uf));
        let conv = alg.convolve(&f, &g)?;
        let err = (&back - &f).max_abs().max((&prod - &conv).max_abs()).max((&star - &alg.involution(&f)).max_abs());
        if err > COEFF_TOL {
            upsilon = Some(format!("sample {k}: defect {err:e}"));
            break;
        }
    }

    let g = alg.groupoid();
    let support: Vec<usize> = (0..n).filter(|&x| g.r(x) == g.s(x)).collect();
    let bundle = StarAlgebra::new(t.tensor_bundle());
    let image = |f: &AlgebraElement| delta_embedding(t, f).map(|d| d.to_bundle_element(t));
    let (mut hom, mut iso) = (None, None);
    for k in 0..c.samples {
        let f = AlgebraElement::random_on(rng, n, &support);
        let h = AlgebraElement::random_on(rng, n, &support);
        let (df, dh) = (image(&f)?, image(&h)?);
        let err = (&image(&alg.convolve(&f, &h)?)? - &bundle.convolve(&df, &dh)?)
            .max_abs()
            .max((&image(&alg.involution(&f))? - &bundle.involution(&df)).max_abs());
        if hom.is_none() && err > COEFF_TOL {
            hom = Some(format!("sample {k}: defect {err:e}"));
        }
        let (a, b) = (norm(alg, &f), norm(&bundle, &df));
        if iso.is_none() && (a - b).abs() > NORM_TOL {
            iso = Some(format!("sample {k}: |f| = {a}, |Delta f| = {b}"));
        }
    }
    let outside = (0..n).find(|&x| g.r(x) != g.s(x));
    let rejects = outside.and_then(|x| match delta_embedding(t, &alg.delta(x)) {
        Err(Error::SupportOutsideInteriorIsotropy(_)) => None,
        other => Some(format!("delta_{x} outside IntIso gave {other:?}")),
    });
    Ok(vec![
        Check::new("upsilon", upsilon),
        Check::new("delta-homomorphism", hom),
        Check::new("delta-isometry", iso),
        Check::new("delta-support", rejects),
    ])
}

fn appendix(c: &Ctx, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (alg, g) = (&c.alg, c.alg.groupoid());
    let mut eta = None;
    for &u in g.units() {
        for k in 0..THETA_SAMPLES {
            let theta = PositiveDefiniteFunction::random(rng, g, u)?;
            let r = verify_eta_positivity(alg, &theta);
            if eta.is_none() && !r.pass {
                eta = Some(format!("unit {u}, sample {k}: min eigenvalue {:e}", r.min_eigenvalue));
            }
        }
    }
    let samples = c.samples;
    let isometry = |sub, rng: &mut ChaCha8Rng| -> Result<Option<String>> {
        let r = verify_open_subgroupoid_isometry(alg, &sub, samples, rng)?;
        Ok(fail_if(!r.pass, || format!("{} elements: deviation {:e}", r.elements, r.max_deviation)))
    };
    let units = isometry(g.restrict_to_open_subgroupoid(g.units())?, rng)?;
    let intiso = isometry(g.interior_isotropy(), rng)?;
    let mut random = None;
    for _ in 0..RANDOM_SUBGROUPOIDS {
        let sub = random_subgroupoid(rng, g);
        let parent = sub.parent.clone();
        if let Some(w) = isometry(sub, rng)? {
            random.get_or_insert(format!("{parent:?}: {w}"));
        }
    }
    Ok(vec![
        Check::new("eta-positivity", eta),
        Check::new("isometry-units", units),
        Check::new("isometry-intiso", intiso),
        Check::new("isometry-random", random),
    ])
}

/// Independent stream per instance and suite, so subsets of suites see the
/// same randomness as a full run.
fn stream_rng(seed: u64, id: usize, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((id as u64) << 8) | suite as u64);
    rng
}

/// Runs the selected suites on one instance.
pub fn run_instance(inst: &Instance, suites: &[Suite], samples: usize, seed: u64) -> Result<InstanceReport> {
    let alg = StarAlgebra::new(inst.groupoid.clone());
    let dec = block_decomposition(&alg)?;
    let ctx = Ctx { inst, alg, dec, samples };
    let mut checks = Vec::new();
    for &suite in suites {
        let mut rng = stream_rng(seed, inst.id, suite);
        let mut batch = match suite {
            Suite::Axioms => axioms(&ctx, &mut rng)?,
            Suite::Norms => norms(&ctx, &mut rng)?,
            Suite::Dominance => dominance(&ctx)?,
            Suite::Minimality => minimality(&ctx)?,
            Suite::Simplicity => simplicity(&ctx)?,
            Suite::Augmentation => augmentation(&ctx)?,
            Suite::Delta => match inst.transformation() {
                Some(t) => delta(&ctx, &t, &mut rng)?,
                None => Vec::new(),
            },
            Suite::Appendix => appendix(&ctx, &mut rng)?,
        };
        checks.append(&mut batch);
    }
    Ok(InstanceReport {
        id: inst.id,
        instance: inst.name.clone(),
        family: inst.family,
        elements: inst.groupoid.len(),
        units: inst.groupoid.units().len(),
        checks,
    })
}

/// Runs `suites` on every instance in parallel. Check failures are recorded;
/// a library error aborts with the instance named.
pub fn run_suite(corpus: &[Instance], suites: &[Suite], spec: &CorpusSpec) -> Result<RunReport> {
    validate_registry()?;
    let start = Instant::now();
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let instances: Vec<InstanceReport> = if suites.is_empty() {
        Vec::new()
    } else {
        corpus
            .par_iter()
            .map(|inst| {
                run_instance(inst, &suites, spec.samples, spec.seed)
                    .map_err(|e| Error::Instance { id: inst.id, name: inst.name.clone(), detail: e.to_string() })
            })
            .collect::<Result<_>>()?
    };
    let checks = instances.iter().map(|i| i.checks.len()).sum();
    let failures = instances.iter().flat_map(|i| &i.checks).filter(|c| !c.pass).count();
    Ok(RunReport {
        schema: SCHEMA_VERSION,
        seed: spec.seed,
        corpus: *spec,
        suites,
        instances,
        checks,
        failures,
        pass: failures == 0,
        elapsed: start.elapsed(),
    })
}
