//! Library results against independent references: textbook discriminant
//! polynomials, brute-force lattice enumeration, a midpoint grid for areas,
//! and Gamma/Beta values computed to 20 digits with mpmath.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thue_area::area::area_oracle_grid;
use thue_area::special_fn::{beta, bound_constant, gamma};
use thue_area::thue::{count_box, count_definite};
use thue_area::{area, discriminant_exact, invariant, make_fstar, make_pk, BinaryForm};

fn int(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn cubic_disc(c: &[i128]) -> i128 {
    let (a, b, c, d) = (c[0], c[1], c[2], c[3]);
    b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d
}

fn quartic_disc(c: &[i128]) -> i128 {
    let (a, b, c, d, e) = (c[0], c[1], c[2], c[3], c[4]);
    256 * a.pow(3) * e.pow(3) - 192 * a * a * b * d * e * e - 128 * a * a * c * c * e * e
        + 144 * a * a * c * d * d * e
        - 27 * a * a * d.pow(4)
        + 144 * a * b * b * c * e * e
        - 6 * a * b * b * d * d * e
        - 80 * a * b * c * c * d * e
        + 18 * a * b * c * d.pow(3)
        + 16 * a * c.pow(4) * e
        - 4 * a * c.pow(3) * d * d
        - 27 * b.pow(4) * e * e
        + 18 * b.pow(3) * c * d * e
        - 4 * b.pow(3) * d.pow(3)
        - 4 * b * b * c.pow(3) * e
        + b * b * c * c * d * d
}

#[test]
fn discriminant_matches_cubic_and_quartic_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..300 {
        let deg = if trial % 2 == 0 { 3 } else { 4 };
        let mut c: Vec<i128> = (0..=deg).map(|_| rng.gen_range(-30..=30)).collect();
        if trial % 7 == 0 {
            // root at infinity
            c[0] = 0;
        }
        let Ok(f) = BinaryForm::from_integers(&c.iter().map(|&x| x as i64).collect::<Vec<_>>()) else { continue };
        let want = if deg == 3 { cubic_disc(&c) } else { quartic_disc(&c) };
        assert_eq!(discriminant_exact(&f).unwrap(), int(want), "{c:?}");
    }
}

#[test]
fn equality_form_has_unit_discriminant() {
    let f = BinaryForm::from_integers(&[0, 1, -1, 0]).unwrap();
    assert_eq!(discriminant_exact(&f).unwrap(), int(1));
}

/// `F(x, y)` for integer points, straight from the definition.
fn eval(c: &[i128], x: i128, y: i128) -> i128 {
    let n = c.len() as u32 - 1;
    c.iter().enumerate().map(|(k, a)| a * x.pow(n - k as u32) * y.pow(k as u32)).sum()
}

fn brute(c: &[i128], h: i128, wx: i128, wy: i128) -> u64 {
    let mut count = 0;
    for x in -wx..=wx {
        for y in -wy..=wy {
            if eval(c, x, y).abs() <= h {
                count += 1;
            }
        }
    }
    count
}

fn coeffs_i128(f: &BinaryForm) -> Vec<i128> {
    f.integer_coeffs().unwrap().iter().map(|b| i128::try_from(b).unwrap()).collect()
}

#[test]
fn pk_counts_match_brute_force() {
    // P_k >= x^{2k} gives |x| <= 5 for h <= 25; for fixed x either y = jx
    // (|y| <= 3|x|) or every factor is a nonzero integer, so |y - x| <= 5.
    for k in 1..=3 {
        let f = make_pk(k).unwrap();
        let c = coeffs_i128(&f);
        for h in [1u64, 5, 25] {
            let want = brute(&c, h as i128, 5, 15);
            assert_eq!(count_definite(&f, h).unwrap().count, want, "k={k} h={h}");
            assert_eq!(count_box(&f, h, 15).unwrap().count, want, "k={k} h={h} box");
        }
    }
}

#[test]
fn indefinite_box_counts_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut forms = vec![vec![0i64, 1, -1, 0], vec![1, 0, 0, -2], vec![1, -3, 0, 1]];
    for _ in 0..6 {
        let deg = rng.gen_range(3..=5);
        forms.push((0..=deg).map(|_| rng.gen_range(-6..=6)).collect());
    }
    for c in forms {
        let Ok(f) = BinaryForm::from_integers(&c) else { continue };
        let ci: Vec<i128> = c.iter().map(|&x| x as i128).collect();
        for h in [1u64, 5, 25] {
            for w in [0u64, 3, 20] {
                assert_eq!(
                    count_box(&f, h, w).unwrap().count,
                    brute(&ci, h as i128, w as i128, w as i128),
                    "{c:?} h={h} w={w}"
                );
            }
        }
    }
}

#[test]
fn pk_area_against_grid() {
    for (k, halfwidth) in [(2, 3.5), (3, 4.5)] {
        let f = make_pk(k).unwrap();
        let quad = area(&f, 1e-10).unwrap().area;
        let grid = area_oracle_grid(&f, halfwidth, 1500);
        assert!(rel(grid, quad) < 1e-2, "k={k}: quadrature {quad}, grid {grid}");
    }
}

// mpmath.gamma at 20 significant digits
const GAMMA_TABLE: [(f64, f64); 20] = [
    (0.1, 9.5135076986687312858),
    (0.25, 3.6256099082219083119),
    (0.3333333333333333, 2.6789385347077477889),
    (0.5, 1.7724538509055160273),
    (0.75, 1.2254167024651776451),
    (1.0, 1.0),
    (1.3, 0.89747069630627718175),
    (1.5, 0.88622692545275801365),
    (2.0, 1.0),
    (2.5, 1.3293403881791370205),
    (3.7, 4.1706517837966040301),
    (4.7, 15.431411600047435652),
    (5.5, 52.342777784553520181),
    (7.25, 1155.3810139199896872),
    (10.0, 362880.0),
    (12.5, 136843365.46556585726),
    (20.0, 121645100408832000.0),
    (33.3, 7.4875775965226323274e35),
    (50.0, 6.0828186403426756087e62),
    (100.5, 9.3209631040827166083e156),
];

#[test]
fn gamma_against_mpmath() {
    for (x, want) in GAMMA_TABLE {
        let got = gamma(x).unwrap();
        assert!(rel(got, want) < 1e-13, "Gamma({x}) = {got}, want {want}");
    }
}

#[test]
fn beta_constants() {
    assert!(rel(3.0 * beta(1.0 / 3.0, 1.0 / 3.0).unwrap(), 15.899748752569049616) < 1e-13);
    assert!(rel(beta(1.0 / 6.0, 0.5).unwrap(), 7.2859519436627448355) < 1e-13);
    let c = bound_constant().value;
    assert!((15.8997..=15.8998).contains(&c));
}

#[test]
fn cubic_x3_plus_xy2() {
    let f = BinaryForm::from_integers(&[1, 0, 1, 0]).unwrap();
    assert!(rel(area(&f, 1e-12).unwrap().area, 7.2859519436627448355) < 1e-10);
    // |D| = 4
    assert!(rel(invariant(&f, 1e-12).unwrap().value, 9.1797242223431572495) < 1e-10);
}

// mpmath values of |D|^{1/n(n-1)} A for F_n^*, n = 3..=12
const FSTAR_TABLE: [f64; 10] = [
    15.899748752569049616,
    11.772640372703191023,
    10.32275875744685099,
    9.5552617632694537879,
    9.0688123673919484242,
    8.7277157532371571163,
    8.4726474221855755302,
    8.273246979558451925,
    8.1122214446216484033,
    7.9789266299435997139,
];

#[test]
fn fstar_closed_form() {
    for (i, want) in FSTAR_TABLE.iter().enumerate() {
        let n = i + 3;
        let nf = n as f64;
        let closed = (nf / 2f64.powi(n as i32 - 1)).powf(1.0 / (nf - 1.0))
            * 4f64.powf((nf - 1.0) / nf)
            * beta(0.5 - 1.0 / nf, 0.5).unwrap();
        assert!(rel(closed, *want) < 1e-12, "closed form n={n}");
        let got = invariant(&make_fstar(n as u32).unwrap(), 1e-12).unwrap().value;
        assert!(rel(got, *want) < 1e-10, "quadrature n={n}: {got}");
    }
    // decreasing towards 2 pi
    assert!(FSTAR_TABLE.windows(2).all(|w| w[1] < w[0]));
    assert!(FSTAR_TABLE[9] > 2.0 * std::f64::consts::PI);
}
