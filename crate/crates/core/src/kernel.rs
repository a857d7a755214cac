//! The thermal kernel `C(y) = ½ coth(y/2)` and its derivatives.
//!
//! Every free energy in this crate is a polynomial differential operator in
//! `y` applied to `C`, because the Matsubara sum of `e^{-|m| y}` is exactly
//! `2 C(y)`. The kernel is evaluated in two branches: a Laurent series about
//! the pole at `y = 0`, and closed rational forms in `q = e^{-y}` elsewhere.

use crate::error::{Error, Result};

/// Highest derivative order returned by [`coth_kernel`].
pub const MAX_ORDER: usize = 5;

/// Below this value of `y` the Laurent branch is used.
pub const SERIES_SWITCHOVER: f64 = 0.25;

/// Above this value `e^{-y}` underflows and the kernel saturates.
pub const UNDERFLOW_Y: f64 = 745.0;

/// Number of Laurent terms used by the kernel series branch.
const LAURENT_TERMS: usize = 7;

/// Coefficients `B_{2k} / (2k)!` of the expansion
/// `C(y) = Σ_k B_{2k}/(2k)! · y^{2k-1}`.
///
/// The series converges for `|y| < 2π`.
pub(crate) const BERNOULLI_RATIOS: [f64; 30] = [
    1.0,
    8.3333333333333333e-2,
    -1.3888888888888889e-3,
    3.3068783068783069e-5,
    -8.2671957671957672e-7,
    2.0876756987868099e-8,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
    8.5860620562778446e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
    -1.3954464685812523e-19,
    3.5347070396294675e-21,
    -8.9535174270375469e-23,
    2.2679524523376831e-24,
    -5.7447906688722024e-26,
    1.4551724756148649e-27,
    -3.6859949406653102e-29,
    9.3367342570950447e-31,
    -2.3650224157006299e-32,
    5.9906717624821343e-34,
    -1.5174548844682903e-35,
    3.8437581254541882e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.2470767418207437e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569556e-46,
];

/// `C(y)` together with its derivatives `C', C'', …, C⁽⁵⁾`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CothKernel {
    pub y: f64,
    /// `c[n]` is the `n`-th derivative of `C` at `y`.
    pub c: [f64; MAX_ORDER + 1],
}

impl CothKernel {
    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// The `n`-th derivative, `n ≤ 5`.
    #[inline]
    pub fn derivative(&self, n: usize) -> f64 {
        self.c[n]
    }
}

/// Evaluates `C(y) = ½ coth(y/2)` and its first five derivatives.
///
/// Requires `y > 0` and finite.
pub fn coth_kernel(y: f64) -> Result<CothKernel> {
    if !y.is_finite() || y <= 0.0 {
        return Err(Error::Domain(format!(
            "coth kernel requires finite y > 0, got {y}"
        )));
    }
    Ok(if y < SERIES_SWITCHOVER {
        laurent_kernel(y)
    } else {
        rational_kernel(y)
    })
}

/// Falling factorial `n (n-1) ⋯ (n-j+1)` for a possibly negative `n`.
#[inline]
pub(crate) fn falling_factorial(n: i32, j: usize) -> f64 {
    (0..j as i32).fold(1.0, |acc, i| acc * f64::from(n - i))
}

/// Laurent branch, seven terms differentiated term by term.
///
/// Accurate to better than `1e-12` relative for `y ≤ 0.5`.
pub fn laurent_kernel(y: f64) -> CothKernel {
    let mut c = [0.0; MAX_ORDER + 1];
    for (order, slot) in c.iter_mut().enumerate() {
        // Sum smallest terms first.
        *slot = (0..LAURENT_TERMS).rev().fold(0.0, |acc, k| {
            let power = 2 * k as i32 - 1;
            acc + BERNOULLI_RATIOS[k]
                * falling_factorial(power, order)
                * y.powi(power - order as i32)
        });
    }
    CothKernel { y, c }
}

/// Rational branch in `q = e^{-y}`, with `1 - q` from `expm1`.
///
/// The numerator polynomials are the Eulerian numbers, so every term is
/// positive and no cancellation occurs.
pub fn rational_kernel(y: f64) -> CothKernel {
    if y > UNDERFLOW_Y {
        let mut c = [0.0; MAX_ORDER + 1];
        c[0] = 0.5;
        return CothKernel { y, c };
    }
    let q = (-y).exp();
    let one_minus_q = -(-y).exp_m1();
    let r = q / one_minus_q;
    let inv = 1.0 / one_minus_q;
    let c = [
        0.5 + r,
        -r * inv,
        r * inv * inv * (1.0 + q),
        -r * inv.powi(3) * (1.0 + q * (4.0 + q)),
        r * inv.powi(4) * (1.0 + q * (11.0 + q * (11.0 + q))),
        -r * inv.powi(5) * (1.0 + q * (26.0 + q * (66.0 + q * (26.0 + q)))),
    ];
    CothKernel { y, c }
}
