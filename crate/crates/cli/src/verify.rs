//! The `verify` verb: replays the two worked circulant examples and the
//! core property suites end to end, self-contained and deterministic.
//! Prints one line per check; any failure flips the exit code to 1.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use cyclat::cyclic::{is_prime_spot, minimal_cyclic_lattice, module_to_lattice, CyclicLattice};
use cyclat::idealmat::{conv_product, ideal_matrix};
use cyclat::lattice::{
    canonical_basis_from_generators, dual_basis, eigen_lower_bound, gram_schmidt_norms_sq,
    membership, min_distance_sq, LatticeBasis,
};
use cyclat::linalg::Matrix;
use cyclat::polyring::{ring_mul, Poly, QuotientContext, RingElement};
use cyclat::rat::{rat, ratio, to_f64, Rational};
use cyclat::smoothing::{
    bound_gs, bound_lambda, bound_tg, discrete_gauss_sample, eta_numeric,
    statistical_distance_check, GaussParams,
};
use cyclat::symeig::symmetric_eigenvalues;

use crate::Failure;

type Check = std::result::Result<(), String>;
type CheckFn = Box<dyn FnOnce(&mut Vec<String>) -> Check>;

pub fn run() -> Result<(), Failure> {
    let mut failures = 0u32;
    let mut notes: Vec<String> = Vec::new();

    let checks: Vec<(&str, CheckFn)> = vec![
        ("3x3 circulant example (g = x^2)", Box::new(example_3x3)),
        ("4x4 circulant example (g = x - 2)", Box::new(example_4x4)),
        ("ideal-matrix ring laws on random pairs", Box::new(ideal_matrix_laws)),
        ("singular spectrum of ideal matrices", Box::new(spectral_consistency)),
        ("threshold below every bound on random cyclic lattices", Box::new(bound_chain)),
        ("threshold grows when the lattice coarsens", Box::new(monotonicity)),
        ("folded density near uniform at the threshold", Box::new(folded_density)),
        ("canonical bases and shortest vectors", Box::new(lattice_backbone)),
        ("deterministic discrete Gaussian sampling", Box::new(sampler)),
    ];
    for (name, check) in checks {
        match check(&mut notes) {
            Ok(()) => println!("ok - {name}"),
            Err(msg) => {
                println!("FAILED - {name}: {msg}");
                failures += 1;
            }
        }
        for note in notes.drain(..) {
            println!("note - {note}");
        }
    }

    if failures == 0 {
        println!("all checks passed");
        Ok(())
    } else {
        Err(Failure::Check(format!("{failures} verification check(s) failed")))
    }
}

fn ensure(cond: bool, msg: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn close(a: f64, b: f64, tol: f64, what: &str) -> Check {
    ensure((a - b).abs() <= tol, &format!("{what}: {a} vs {b}"))
}

fn ctx(phi: &[i64]) -> QuotientContext {
    QuotientContext::new(Poly::from_integers(phi)).expect("valid modulus")
}

fn ones_upper(n: usize) -> LatticeBasis {
    LatticeBasis::new(Matrix::from_fn(n, n, |i, j| if i <= j { rat(1) } else { rat(0) }))
        .expect("triangular basis")
}

fn random_element(rng: &mut ChaCha20Rng, c: &QuotientContext, range: i64) -> RingElement {
    let coeffs: Vec<Rational> =
        (0..c.n()).map(|_| rat(rng.gen_range(-range..=range))).collect();
    c.element(Poly::new(coeffs))
}

fn random_prime_spot(rng: &mut ChaCha20Rng, c: &QuotientContext) -> RingElement {
    loop {
        let g = random_element(rng, c, 3);
        if !g.is_zero() && is_prime_spot(&g).is_ok() {
            return g;
        }
    }
}

fn example_3x3(_: &mut Vec<String>) -> Check {
    let c = ctx(&[-1, 0, 0, 1]);
    let g = c.element(Poly::monomial(2));
    let cert = is_prime_spot(&g).map_err(|e| e.to_string())?;
    ensure(cert.u().rep() == &Poly::monomial(1), "inverse of x^2 should be x")?;
    ensure(cert.tg().rep() == &Poly::monomial(2), "dual generator should be x^2")?;
    for &v in cert.tg_values() {
        close(v, 1.0, 1e-9, "|T_g| at a cube root of unity")?;
    }
    let basis = ones_upper(3);
    let lattice = CyclicLattice::from_basis(basis.clone(), &c).map_err(|e| e.to_string())?;
    let (bt, _) = bound_tg(&lattice, &g).map_err(|e| e.to_string())?;
    close(bt, 3f64.sqrt(), 1e-9, "certificate bound")?;
    let bgs = bound_gs(&basis).map_err(|e| e.to_string())?;
    close(bgs, 3.0, 1e-9, "gram-schmidt bound")?;
    let dual_min = gram_schmidt_norms_sq(&dual_basis(&basis).map_err(|e| e.to_string())?)
        .iter()
        .map(to_f64)
        .fold(f64::INFINITY, f64::min)
        .sqrt();
    close(dual_min, 3f64.sqrt() / 3.0, 1e-9, "shortest dual gram-schmidt vector")?;
    ensure(bt <= bgs, "certificate bound should not exceed gram-schmidt bound here")?;
    let eta = eta_numeric(&basis, 0.125, 1e-9).map_err(|e| e.to_string())?;
    ensure(eta <= bt + 1e-6 && eta <= bgs + 1e-6, "threshold must respect both bounds")
}

fn example_4x4(notes: &mut Vec<String>) -> Check {
    let c = ctx(&[-1, 0, 0, 0, 1]);
    let g = c.element(Poly::from_integers(&[-2, 1]));
    let cert = is_prime_spot(&g).map_err(|e| e.to_string())?;
    ensure(
        ring_mul(cert.u(), &g).map_err(|e| e.to_string())? == c.one_element(),
        "certificate inverse must satisfy u*g = 1",
    )?;
    let u_expect = Poly::new(vec![ratio(-8, 15), ratio(-4, 15), ratio(-2, 15), ratio(-1, 15)]);
    ensure(cert.u().rep() == &u_expect, "inverse of x - 2 mod x^4 - 1")?;
    let tg_expect = Poly::new(vec![ratio(-8, 15), ratio(-1, 15), ratio(-2, 15), ratio(-4, 15)]);
    ensure(cert.tg().rep() == &tg_expect, "dual generator of x - 2")?;
    let inv_sqrt5 = 5f64.sqrt().recip();
    for (&got, want) in cert.tg_values().iter().zip([1.0, inv_sqrt5, 1.0 / 3.0, inv_sqrt5]) {
        close(got, want, 1e-9, "|T_g| at a fourth root of unity")?;
    }
    let basis = ones_upper(4);
    let lattice = CyclicLattice::from_basis(basis.clone(), &c).map_err(|e| e.to_string())?;
    let (bt, _) = bound_tg(&lattice, &g).map_err(|e| e.to_string())?;
    close(bt, 6.0, 1e-9, "certificate bound")?;
    let bgs = bound_gs(&basis).map_err(|e| e.to_string())?;
    close(bgs, 4.0, 1e-9, "gram-schmidt bound")?;
    // The dual of the minimal lattice of g is generated by T_g.
    let dual = dual_basis(minimal_cyclic_lattice(&g).map_err(|e| e.to_string())?.basis())
        .map_err(|e| e.to_string())?;
    let tg_lattice =
        LatticeBasis::new(ideal_matrix(cert.tg()).entries().clone()).map_err(|e| e.to_string())?;
    for j in 0..4 {
        ensure(
            membership(&dual, &tg_lattice.column(j)).map_err(|e| e.to_string())?.is_some()
                && membership(&tg_lattice, &dual.column(j)).map_err(|e| e.to_string())?.is_some(),
            "dual of the minimal lattice must coincide with the lattice of T_g",
        )?;
    }
    notes.push(
        "reference constants sometimes quoted for this example (u with denominators 7, \
         bound 2.8) fail the defining identity u*g = 1; the certified values above \
         (denominators 15, bound 6) satisfy it exactly"
            .to_string(),
    );
    Ok(())
}

fn ideal_matrix_laws(_: &mut Vec<String>) -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(101);
    for phi in [&[-1i64, 0, 1][..], &[-1, -1, 0, 1], &[-1, 0, 0, 0, 1], &[-1, -1, 0, 0, 1]] {
        let c = ctx(phi);
        for _ in 0..15 {
            let f = random_element(&mut rng, &c, 4);
            let g = random_element(&mut rng, &c, 4);
            let hf = ideal_matrix(&f);
            let hg = ideal_matrix(&g);
            let prod = ring_mul(&f, &g).map_err(|e| e.to_string())?;
            ensure(
                ideal_matrix(&prod).entries() == &hf.entries().matmul(hg.entries()),
                "ideal matrix of a product must be the product of ideal matrices",
            )?;
            let sum = f.add(&g).map_err(|e| e.to_string())?;
            ensure(
                ideal_matrix(&sum).entries() == &hf.entries().add(hg.entries()),
                "ideal matrix of a sum must be the sum of ideal matrices",
            )?;
            ensure(
                (f == g) == (hf.entries() == hg.entries()),
                "ideal matrices must agree exactly when the elements do",
            )?;
            ensure(
                conv_product(&f, &g).map_err(|e| e.to_string())? == prod,
                "convolutional product must match ring multiplication",
            )?;
        }
    }
    Ok(())
}

fn spectral_consistency(_: &mut Vec<String>) -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(103);
    let c = ctx(&[-1, 0, 0, 0, 1]);
    for _ in 0..10 {
        let g = random_prime_spot(&mut rng, &c);
        let m = ideal_matrix(&g).entries().clone();
        let gram = m.transpose().matmul(&m);
        let rows: Vec<Vec<f64>> =
            (0..4).map(|i| (0..4).map(|j| to_f64(&gram[(i, j)])).collect()).collect();
        let eig = symmetric_eigenvalues(&rows);
        let mut expected: Vec<f64> =
            c.roots().iter().map(|w| g.rep().eval_complex(*w).norm_sqr()).collect();
        expected.sort_by(f64::total_cmp);
        for (e, x) in eig.iter().zip(&expected) {
            close(*e, *x, 1e-6 * (1.0 + x.abs()), "singular value spectrum")?;
        }
    }
    Ok(())
}

fn bound_chain(notes: &mut Vec<String>) -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(107);
    let mut tg_not_worse = 0u32;
    let total = 10u32;
    for i in 0..total {
        let c = if i % 2 == 0 { ctx(&[-1, 0, 1]) } else { ctx(&[-1, 0, 0, 1]) };
        let g = random_prime_spot(&mut rng, &c);
        let lattice = minimal_cyclic_lattice(&g).map_err(|e| e.to_string())?;
        let eps = 2f64.powi(-(c.n() as i32));
        let eta = eta_numeric(lattice.basis(), eps, 1e-9).map_err(|e| e.to_string())?;
        let bl = bound_lambda(lattice.basis()).map_err(|e| e.to_string())?;
        let bgs = bound_gs(lattice.basis()).map_err(|e| e.to_string())?;
        let (bt, _) = bound_tg(&lattice, &g).map_err(|e| e.to_string())?;
        ensure(eta <= bl + 1e-6 && eta <= bgs + 1e-6 && eta <= bt + 1e-6, "bound violated")?;
        ensure(bl <= bt + 1e-9, "shortest-vector bound must not exceed certificate bound")?;
        if bt <= bgs + 1e-9 {
            tg_not_worse += 1;
        }
    }
    notes.push(format!(
        "certificate bound <= gram-schmidt bound in {tg_not_worse}/{total} instances \
         (recorded, not asserted)"
    ));
    Ok(())
}

fn monotonicity(_: &mut Vec<String>) -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(109);
    for _ in 0..5 {
        let l = loop {
            let cols: Vec<Vec<i64>> =
                (0..2).map(|_| (0..2).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            if let Ok(l) = LatticeBasis::from_integer_columns(&cols) {
                if l.is_full_rank() {
                    break l;
                }
            }
        };
        for eps in [0.25, 0.1] {
            let fine = eta_numeric(&l, eps, 1e-9).map_err(|e| e.to_string())?;
            for k in [2i64, 3] {
                let coarse =
                    eta_numeric(&l.scaled(&rat(k)), eps, 1e-9).map_err(|e| e.to_string())?;
                ensure(fine <= coarse + 1e-6, "threshold must grow with sublattices")?;
            }
        }
    }
    Ok(())
}

fn folded_density(_: &mut Vec<String>) -> Check {
    let z = LatticeBasis::new(Matrix::identity(1)).expect("unit basis");
    let s = eta_numeric(&z, 0.5, 1e-9).map_err(|e| e.to_string())?;
    let (delta, pass) = statistical_distance_check(&z, s).map_err(|e| e.to_string())?;
    ensure(delta <= 0.25 + 1e-3, &format!("distance {delta} above epsilon/2 guarantee"))?;
    ensure(pass, "statistical-distance flag should pass at the threshold")
}

fn lattice_backbone(_: &mut Vec<String>) -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(113);
    for _ in 0..20 {
        let n = rng.gen_range(2..=3usize);
        let l = loop {
            let cols: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            if let Ok(l) = LatticeBasis::from_integer_columns(&cols) {
                if l.is_full_rank() {
                    break l;
                }
            }
        };
        let (min_sq, witness) = min_distance_sq(&l, f64::INFINITY).map_err(|e| e.to_string())?;
        let wv: Vec<Rational> = witness.iter().map(|&x| rat(x)).collect();
        let reached = l.matrix().mul_vec(&wv).iter().map(|x| x * x).sum::<Rational>();
        ensure(reached == min_sq, "witness must achieve the reported minimum")?;
        ensure(
            eigen_lower_bound(&l) <= to_f64(&min_sq).sqrt() + 1e-9,
            "eigenvalue bound must stay below the minimum distance",
        )?;
        // A brute-force scan over a small coefficient box cannot beat it.
        let mut coeff = vec![-4i64; n];
        loop {
            if coeff.iter().any(|&x| x != 0) {
                let cv: Vec<Rational> = coeff.iter().map(|&x| rat(x)).collect();
                let len = l.matrix().mul_vec(&cv).iter().map(|x| x * x).sum::<Rational>();
                ensure(len >= min_sq, "brute-force point below the reported minimum")?;
            }
            let mut k = 0;
            loop {
                if k == n {
                    break;
                }
                coeff[k] += 1;
                if coeff[k] <= 4 {
                    break;
                }
                coeff[k] = -4;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        // Canonical form is invariant under generator shuffling.
        let mut cols = l.matrix().columns();
        let extra = cols[0].iter().zip(&cols[1]).map(|(a, b)| a + b).collect::<Vec<_>>();
        cols.push(extra);
        cols.rotate_left(1);
        let a = canonical_basis_from_generators(n, &cols).map_err(|e| e.to_string())?;
        let b = canonical_basis_from_generators(n, &l.matrix().columns())
            .map_err(|e| e.to_string())?;
        ensure(a.matrix() == b.matrix(), "canonical basis must ignore generator presentation")?;
    }
    // Module generators always span rotation-closed lattices.
    let c = ctx(&[-1, 0, 0, 1]);
    for _ in 0..10 {
        let gens = vec![random_element(&mut rng, &c, 3), random_element(&mut rng, &c, 3)];
        if gens.iter().all(|g| g.is_zero()) {
            continue;
        }
        let l = module_to_lattice(&gens).map_err(|e| e.to_string())?;
        ensure(
            cyclat::cyclic::is_cyclic(l.basis(), &c).map_err(|e| e.to_string())?,
            "module lattices must be rotation-closed",
        )?;
    }
    Ok(())
}

fn sampler(_: &mut Vec<String>) -> Check {
    let z = LatticeBasis::new(Matrix::identity(1)).expect("unit basis");
    let params = GaussParams { s: 1.0, c: vec![Rational::zero()] };
    let a = discrete_gauss_sample(&z, &params, 7, 2000).map_err(|e| e.to_string())?;
    let b = discrete_gauss_sample(&z, &params, 7, 2000).map_err(|e| e.to_string())?;
    ensure(a == b, "identical seeds must give identical samples")?;
    let zeros = a.iter().filter(|x| x[0].is_zero()).count() as f64 / a.len() as f64;
    ensure(
        (zeros - 0.920441787835591).abs() < 0.02,
        &format!("origin frequency {zeros} far from the normalized weight"),
    )?;
    let narrow = GaussParams { s: 0.05, c: vec![Rational::zero()] };
    let all_zero = discrete_gauss_sample(&z, &narrow, 11, 100)
        .map_err(|e| e.to_string())?
        .iter()
        .all(|x| x[0].is_zero());
    ensure(all_zero, "a tiny width must concentrate all samples at the origin")
}
