//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so that every line is printed.

use std::collections::BTreeMap;
use std::process::ExitCode;

use resolvent_core::algebra::LocalAlgebra;
use resolvent_core::complex::LocalComplex;
use resolvent_core::field::PrimeField;
use resolvent_core::gen::{scoped_rings, Gen};
use resolvent_core::homology::homology_profile;
use resolvent_core::verify::{run_check, Scale, VerifyConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn full(ids: &[&str]) -> Outcome {
    let config = VerifyConfig { scale: Scale::Full, seed: 0, fault: None };
    let mut details = Vec::new();
    for id in ids {
        match run_check(id, config).ok_or_else(|| format!("no check {id}"))? {
            Ok(detail) => details.push(detail),
            Err(f) => return Err(format!("{id}: {}", f.message)),
        }
    }
    Ok(details.join("; "))
}

/// Rank over `F_p` by row reduction, written independently of the library.
fn oracle_rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = mod_pow(m[rank][c], p - 2, p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let factor = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v + p - factor * pv % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            out = out * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    out
}

/// Expands a ring matrix by multiplying monomials through exponent addition.
fn oracle_expand(alg: &LocalAlgebra, c: &LocalComplex, deg: i64) -> Vec<Vec<u64>> {
    let d = c.diff(deg);
    let basis = alg.basis();
    let n = basis.len();
    let p = alg.field().p() as u64;
    let mut out = vec![vec![0u64; d.cols() * n]; d.rows() * n];
    for r in 0..d.rows() {
        for col in 0..d.cols() {
            let entry = d.get(r, col);
            for (k, &coef) in entry.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                for (j, bj) in basis.iter().enumerate() {
                    let prod: Vec<u32> = basis[k].iter().zip(bj).map(|(a, b)| a + b).collect();
                    let killed = alg
                        .relations()
                        .iter()
                        .any(|rel| rel.iter().zip(&prod).all(|(a, b)| a <= b));
                    if killed {
                        continue;
                    }
                    let i = basis.iter().position(|m| *m == prod).expect("standard monomial");
                    let cell = &mut out[r * n + i][col * n + j];
                    *cell = (*cell + coef as u64) % p;
                }
            }
        }
    }
    out
}

fn homology_oracle() -> Outcome {
    let mut g = Gen::new(32);
    let rings = scoped_rings(PrimeField::default());
    for i in 0..50 {
        let r = &rings[i % rings.len()];
        let x = g.complex(r);
        let profile = homology_profile(&x);
        for (s, c) in x.parts().iter().enumerate() {
            let alg = c.algebra();
            let p = alg.field().p() as u64;
            let mut expected = BTreeMap::new();
            if let Some((lo, hi)) = c.window() {
                for deg in lo..=hi {
                    let out = oracle_rank(oracle_expand(alg, c, deg), p);
                    let inc = oracle_rank(oracle_expand(alg, c, deg - 1), p);
                    let h = c.rank(deg) * alg.dim() - out - inc;
                    if h > 0 {
                        expected.insert(deg, h);
                    }
                }
            }
            if profile.sites[s] != expected {
                return Err(format!("site {s}: library {:?}, oracle {expected:?}", profile.sites[s]));
            }
        }
    }
    Ok("50 complexes".into())
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("koszul projective dimension equals embedding dimension", Box::new(|| full(&["koszul.projective-dimension"]))),
        ("koszul chain witnesses and strict inclusions", Box::new(|| full(&["classify.k0-chain"]))),
        ("phi of koszul witness family reproduces the map", Box::new(|| full(&["classify.phi-roundtrip"]))),
        (
            "filtrations and order-preserving maps are mutually inverse",
            Box::new(|| full(&["spectrum.filtration-bijection"])),
        ),
        ("twist cuts the NE-locus by V(x)", Box::new(|| full(&["koszul.twist-ne-locus"]))),
        ("NE shrinking hits W and preserves pd and depth", Box::new(|| full(&["invariants.ne-shrink"]))),
        ("auslander-buchsbaum pd + depth = 0", Box::new(|| full(&["invariants.auslander-buchsbaum"]))),
        ("triangle inequalities for pd and depth", Box::new(|| full(&["complex.triangle-inequalities"]))),
        ("G(f)[1] agrees with H(f) on perfect complexes", Box::new(|| full(&["classify.g-shift-equals-h"]))),
        ("module fingerprint square commutes", Box::new(|| full(&["classify.module-square"]))),
        (
            "biduality and duality transport",
            Box::new(|| full(&["complex.biduality", "classify.duality-transport"])),
        ),
        ("homology agrees with an independent oracle", Box::new(homology_oracle)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
