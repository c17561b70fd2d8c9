//! Plain-text reports. Everything is printed in a fixed order so that equal
//! inputs give byte-identical output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::sync::Arc;

use resolvent_core::algebra::{PrimeSite, ProductRing};
use resolvent_core::classify::{fingerprint, k0_chain_witness, phi_map, q_map, res_membership, GeneratorSet};
use resolvent_core::complex::FreeComplex;
use resolvent_core::homology::homology_profile;
use resolvent_core::invariants::{
    depth_of, gdim_of, is_in_e, is_in_k0n, is_mcm, ne_locus, ne_shrink, proj_dim, NeLocus, Object,
};
use resolvent_core::spectrum::{
    check_weak_cousin, enumerate_filtrations, enumerate_grade_consistent, enumerate_order_maps, enumerate_posets,
    enumerate_sp_closed, filt_to_map, map_to_filt, SpecPoset,
};
use resolvent_core::verify::{run_suite, VerifyConfig};
use resolvent_core::{Error, ExtInt};

use crate::parse::format_complex;

/// A finished report and whether every check in it passed.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn passed(text: String) -> Self {
        Report { text, ok: true }
    }
}

pub struct Named {
    pub name: String,
    pub complex: FreeComplex,
}

fn degrees(m: &BTreeMap<i64, usize>) -> String {
    if m.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = m.iter().map(|(d, n)| format!("{d}:{n}")).collect();
    parts.join(" ")
}

fn sites(set: &NeLocus) -> String {
    let names: Vec<String> = set.iter().map(PrimeSite::to_string).collect();
    format!("{{{}}}", names.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn header(out: &mut String, command: &str, seed: u64, ring: &ProductRing) {
    writeln!(out, "resolvent {command}").unwrap();
    writeln!(out, "seed {seed}").unwrap();
    let dims: Vec<String> = ring.factors().iter().map(|a| a.dim().to_string()).collect();
    writeln!(out, "ring p={} sites={} k-dims=[{}]", ring.field().p(), ring.num_sites(), dims.join(", ")).unwrap();
}

fn gdim_text(x: &Object, s: PrimeSite) -> Result<String, Error> {
    match gdim_of(x, s) {
        Ok(v) => Ok(v.to_string()),
        Err(Error::NotGorenstein(..)) => Ok("undefined (not Gorenstein)".into()),
        Err(e) => Err(e),
    }
}

pub fn invariants(ring: &Arc<ProductRing>, xs: &[Named], site: Option<PrimeSite>, seed: u64) -> Result<Report, Error> {
    let mut out = String::new();
    header(&mut out, "invariants", seed, ring);
    let selected: Vec<PrimeSite> = match site {
        Some(s) => {
            ring.check_site(s)?;
            vec![s]
        }
        None => ring.sites().collect(),
    };
    for x in xs {
        let c = &x.complex;
        let obj = Object::from(c.clone());
        let h = homology_profile(c);
        let minimal = c.minimal_ranks();
        writeln!(out, "complex {}", x.name).unwrap();
        for &s in &selected {
            writeln!(out, "  site {s}").unwrap();
            writeln!(out, "    ranks {}", degrees(&c.part(s).graded_ranks())).unwrap();
            writeln!(out, "    minimal ranks {}", degrees(&minimal[s.0])).unwrap();
            writeln!(out, "    homology {}", degrees(&h.sites[s.0])).unwrap();
            writeln!(out, "    pd {}", proj_dim(c, s)?).unwrap();
            writeln!(out, "    depth {}", depth_of(&obj, s)?).unwrap();
            writeln!(out, "    gdim {}", gdim_text(&obj, s)?).unwrap();
        }
        writeln!(out, "  NE-locus {}", sites(&ne_locus(c))).unwrap();
        writeln!(out, "  in E_R {}", yes(is_in_e(c))).unwrap();
        writeln!(out, "  MCM {}", yes(is_mcm(&obj))).unwrap();
    }
    Ok(Report::passed(out))
}

fn perfect_set(ring: &Arc<ProductRing>, xs: &[Named]) -> Result<GeneratorSet, Error> {
    GeneratorSet::perfect(ring, xs.iter().map(|x| x.complex.clone()).collect())
}

pub fn classify(ring: &Arc<ProductRing>, xs: &[Named], seed: u64) -> Result<Report, Error> {
    let mut out = String::new();
    header(&mut out, "classify", seed, ring);
    let gens = perfect_set(ring, xs)?;
    let names: Vec<&str> = xs.iter().map(|x| x.name.as_str()).collect();
    writeln!(out, "generators [{}]", names.join(", ")).unwrap();
    writeln!(out, "resolving closure: sup pd per site {}", phi_map(&gens)?).unwrap();
    let cs: Vec<FreeComplex> = xs.iter().map(|x| x.complex.clone()).collect();
    writeln!(out, "dual side: sup pd of duals per site {}", q_map(ring, &cs)?).unwrap();
    let poset = SpecPoset::from_ring(ring);
    let phi = phi_map(&gens)?;
    let filt = map_to_filt(&poset, &phi)?;
    writeln!(out, "filtration {}", filt.format(&poset)).unwrap();
    writeln!(out, "NE-locus {}", sites(&resolvent_core::invariants::ne_of_set(&cs))).unwrap();
    Ok(Report::passed(out))
}

pub fn fingerprint_report(ring: &Arc<ProductRing>, xs: &[Named], seed: u64) -> Result<Report, Error> {
    let mut out = String::new();
    header(&mut out, "fingerprint", seed, ring);
    let report = fingerprint(&perfect_set(ring, xs)?)?;
    let poset = SpecPoset::from_ring(ring);
    for (x, g) in xs.iter().zip(&report.generators) {
        let pd: Vec<String> = g.perfect_pd.iter().map(ExtInt::to_string).collect();
        writeln!(out, "generator {}: perfect part pd ({}), MCM part NE {}", x.name, pd.join(", "), sites(&g.mcm_ne))
            .unwrap();
    }
    writeln!(out, "map {}", report.fingerprint.fmap).unwrap();
    writeln!(out, "singular part {}", report.fingerprint.sing_part.format(&poset)).unwrap();
    for w in &report.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    Ok(Report::passed(out))
}

/// Is the last complex in the resolving closure of the others?
pub fn member(
    ring: &Arc<ProductRing>,
    xs: &[Named],
    site: Option<PrimeSite>,
    cap: Option<i64>,
    seed: u64,
) -> Result<Report, Error> {
    let mut out = String::new();
    header(&mut out, "member", seed, ring);
    let (candidate, gens) = xs.split_last().expect("at least one complex");
    let names: Vec<&str> = gens.iter().map(|x| x.name.as_str()).collect();
    writeln!(out, "candidate {}", candidate.name).unwrap();
    writeln!(out, "generators [{}]", names.join(", ")).unwrap();
    let c = &candidate.complex;
    writeln!(out, "in res(generators) {}", yes(res_membership(c, &perfect_set(ring, gens)?)?)).unwrap();
    writeln!(out, "in E_R {}", yes(is_in_e(c))).unwrap();
    if let Some(s) = site {
        let n = cap.unwrap_or(0);
        writeln!(out, "in k0({n}) at {s} {}", yes(is_in_k0n(c, n, s)?)).unwrap();
    }
    Ok(Report::passed(out))
}

pub fn shrink(ring: &Arc<ProductRing>, x: &Named, w: &NeLocus, seed: u64) -> Result<Report, Error> {
    let mut out = String::new();
    header(&mut out, "shrink", seed, ring);
    let c = &x.complex;
    writeln!(out, "complex {}", x.name).unwrap();
    writeln!(out, "NE-locus {}", sites(&ne_locus(c))).unwrap();
    writeln!(out, "target {}", sites(w)).unwrap();
    let y = ne_shrink(c, w)?;
    let ok = ne_locus(&y) == *w;
    writeln!(out, "result NE-locus {}", sites(&ne_locus(&y))).unwrap();
    let mut preserved = true;
    for &p in w {
        let (pdx, pdy) = (proj_dim(c, p)?, proj_dim(&y, p)?);
        let (dx, dy) = (depth_of(&Object::from(c.clone()), p)?, depth_of(&Object::from(y.clone()), p)?);
        preserved &= pdx == pdy && dx == dy;
        writeln!(out, "  {p}: pd {pdx} -> {pdy}, depth {dx} -> {dy}").unwrap();
    }
    writeln!(out, "result").unwrap();
    for line in format_complex(&y.minimize()).lines() {
        writeln!(out, "  {line}").unwrap();
    }
    Ok(Report { text: out, ok: ok && preserved })
}

pub fn chain(ring: &Arc<ProductRing>, site: PrimeSite, cap: i64, seed: u64) -> Result<Report, Error> {
    let mut out = String::new();
    header(&mut out, "chain", seed, ring);
    writeln!(out, "site {site}").unwrap();
    let mut ok = true;
    for n in 0..=cap {
        let x = k0_chain_witness(ring, site, n)?;
        let level = is_in_k0n(&x, n, site)? && !is_in_k0n(&x, n - 1, site)?;
        let next = k0_chain_witness(ring, site, n + 1)?;
        let up = res_membership(&x, &GeneratorSet::perfect(ring, vec![next.clone()])?)?;
        let strict = !res_membership(&next, &GeneratorSet::perfect(ring, vec![x.clone()])?)?;
        ok &= level && up && strict;
        writeln!(
            out,
            "n={n} pd {} exact level {} contained in next {} strict {}",
            proj_dim(&x, site)?,
            yes(level),
            yes(up),
            yes(strict)
        )
        .unwrap();
    }
    Ok(Report { text: out, ok })
}

pub fn enumerate(poset: &SpecPoset, cap: u32, seed: u64) -> Result<Report, Error> {
    let mut out = String::new();
    writeln!(out, "resolvent enumerate").unwrap();
    writeln!(out, "seed {seed}").unwrap();
    writeln!(out, "poset {} elements, cap {cap}", poset.len()).unwrap();
    let maps = enumerate_order_maps(poset, cap)?;
    let filts = enumerate_filtrations(poset, cap)?;
    let mut ok = maps.len() == filts.len();
    for f in &maps {
        ok &= filt_to_map(poset, &map_to_filt(poset, f)?)? == *f;
    }
    for phi in &filts {
        ok &= map_to_filt(poset, &filt_to_map(poset, phi)?)? == *phi;
    }
    let cousin = filts.iter().filter(|phi| check_weak_cousin(poset, phi)).count();
    writeln!(out, "order-preserving maps {}", maps.len()).unwrap();
    writeln!(out, "filtrations {}", filts.len()).unwrap();
    writeln!(out, "weak Cousin filtrations {cousin}").unwrap();
    writeln!(out, "bijection {}", if ok { "holds" } else { "FAILS" }).unwrap();
    let sing = poset.singular_set();
    let closed = enumerate_sp_closed(poset)?;
    let in_sing: Vec<_> = closed.iter().filter(|w| w.is_subset(&sing)).collect();
    let grade = enumerate_grade_consistent(poset)?;
    writeln!(out, "grade-consistent maps {}", grade.len()).unwrap();
    for f in &grade {
        writeln!(out, "  {f}").unwrap();
    }
    writeln!(out, "closed subsets of the singular locus {}", in_sing.len()).unwrap();
    for w in &in_sing {
        writeln!(out, "  {}", w.format(poset)).unwrap();
    }
    writeln!(out, "classifying pairs {}", grade.len() * in_sing.len()).unwrap();
    Ok(Report { text: out, ok })
}

pub fn poset_counts(max: usize, seed: u64) -> Result<Report, Error> {
    let mut out = String::new();
    writeln!(out, "resolvent enumerate").unwrap();
    writeln!(out, "seed {seed}").unwrap();
    for n in 0..=max {
        writeln!(out, "posets on {n} points up to isomorphism {}", enumerate_posets(n)?.len()).unwrap();
    }
    Ok(Report::passed(out))
}

pub fn verify(config: VerifyConfig) -> Report {
    let mut out = String::new();
    writeln!(out, "resolvent verify").unwrap();
    writeln!(out, "seed {} scale {}", config.seed, config.scale).unwrap();
    if let Some(f) = config.fault {
        writeln!(out, "injected fault {f:?}").unwrap();
    }
    let results = run_suite(config);
    let mut failed = BTreeSet::new();
    for r in &results {
        match &r.outcome {
            Ok(detail) => writeln!(out, "PASS {} ({detail})", r.id).unwrap(),
            Err(f) => {
                failed.insert(r.id);
                writeln!(out, "FAIL {}: {}", r.id, f.message).unwrap();
                writeln!(out, "  check: {}", r.about).unwrap();
                if let Some(x) = &f.instance {
                    writeln!(out, "  failing ring file:").unwrap();
                    for line in crate::parse::format_ring(x.ring()).lines() {
                        writeln!(out, "    {line}").unwrap();
                    }
                    writeln!(out, "  failing complex file:").unwrap();
                    for line in format_complex(x).lines() {
                        writeln!(out, "    {line}").unwrap();
                    }
                }
            }
        }
    }
    writeln!(out, "{} of {} checks passed", results.len() - failed.len(), results.len()).unwrap();
    Report { text: out, ok: failed.is_empty() }
}
