//! Small numeric helpers: fixed Gauss-Legendre rules and removable-singularity
//! functions that keep closed forms continuous across branch boundaries.

/// 8-point Gauss-Legendre nodes on [-1, 1] (positive half) and weights.
const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Integrates `f` over [a, b] with the 8-point Gauss-Legendre rule.
pub fn gauss_legendre8(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
        acc += w * (f(mid - half * x) + f(mid + half * x));
    }
    acc * half
}

/// Composite Gauss-Legendre over `panels` equal pieces.
pub fn integrate(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + h * i as f64;
            gauss_legendre8(lo, lo + h, &f)
        })
        .sum()
}

/// sin(x)/x with the removable singularity filled.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// atan(sqrt z)/sqrt z for z >= 0 and artanh(sqrt -z)/sqrt -z for z < 0.
///
/// Both continue the same power series 1 - z/3 + z^2/5 - ..., which is how the
/// circular and hyperbolic branches of the leading-arc formula meet at w = 1.
pub fn atan_ratio(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        1.0 - z * (1.0 / 3.0 - z * (1.0 / 5.0 - z * (1.0 / 7.0 - z / 9.0)))
    } else if z > 0.0 {
        let r = z.sqrt();
        r.atan() / r
    } else {
        let r = (-z).sqrt();
        r.atanh() / r
    }
}

/// tan(sqrt y)/sqrt y for y >= 0 and tanh(sqrt -y)/sqrt -y for y < 0.
pub fn tan_ratio(y: f64) -> f64 {
    if y.abs() < 1e-4 {
        1.0 + y * (1.0 / 3.0 + y * (2.0 / 15.0 + y * (17.0 / 315.0 + y * 62.0 / 2835.0)))
    } else if y > 0.0 {
        let r = y.sqrt();
        r.tan() / r
    } else {
        let r = (-y).sqrt();
        r.tanh() / r
    }
}
