//! Truncated Taylor-series arithmetic ("jets") in one expansion variable.
//!
//! A [`Jet`] carries the Taylor coefficients f(R₀), f'(R₀), f''(R₀)/2!, …
//! of an analytic function at a fixed expansion point. Propagating jets
//! through the closed-form molecular integrals yields their exact analytic
//! derivatives without step-size tuning; finite differences stay available
//! in tests as an independent cross-check.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Taylor coefficients `c[k] = f⁽ᵏ⁾(R₀)/k!` up to a fixed truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    c: Vec<f64>,
}

impl Jet {
    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Jet { c }
    }

    /// The expansion variable itself: value `v`, slope one.
    pub fn variable(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        if order >= 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Taylor coefficient of (R - R₀)^k.
    pub fn coeff(&self, k: usize) -> f64 {
        self.c.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut g = vec![0.0; n];
        g[0] = self.c[0].exp();
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * g[k - j];
            }
            g[k] = acc / k as f64;
        }
        Jet { c: g }
    }

    pub fn recip(&self) -> Jet {
        let n = self.c.len();
        assert!(self.c[0] != 0.0, "division by a jet with zero value");
        let mut h = vec![0.0; n];
        h[0] = 1.0 / self.c[0];
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += self.c[j] * h[k - j];
            }
            h[k] = -acc / self.c[0];
        }
        Jet { c: h }
    }

    /// Compose an outer function given by its Taylor coefficients at
    /// `self.value()` with this jet: returns `F(self)`.
    ///
    /// `outer[m]` must be `F⁽ᵐ⁾(self.value())/m!` for `m = 0..=order`.
    pub fn compose(&self, outer: &[f64]) -> Jet {
        let n = self.c.len();
        assert_eq!(outer.len(), n);
        // u = self − value has zero constant term, so Horner evaluation of
        // the outer series in u truncates exactly.
        let mut u = self.clone();
        u.c[0] = 0.0;
        let mut result = Jet::constant(outer[n - 1], n - 1);
        for m in (0..n - 1).rev() {
            result = &result * &u;
            result.c[0] += outer[m];
        }
        result
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        Jet {
            c: self
                .c
                .iter()
                .zip(rhs.c.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        Jet {
            c: self
                .c
                .iter()
                .zip(rhs.c.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.c.len();
        let mut out = vec![0.0; n];
        for i in 0..n {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..n - i {
                out[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c: out }
    }
}

impl Div for &Jet {
    type Output = Jet;
    // Series division is multiplication by the reciprocal series.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Jet) -> Jet {
        self * &rhs.recip()
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// Boys functions F₀..F_max at `t ≥ 0`.
///
/// Uses the cancellation-free Kummer series for moderate arguments with a
/// stable downward recursion, and the closed asymptotic form with upward
/// recursion for large `t`.
pub fn boys(max_order: usize, t: f64) -> Vec<f64> {
    assert!(t >= 0.0, "Boys function needs a non-negative argument");
    let m = max_order;
    let mut f = vec![0.0; m + 1];
    if t < 1e-14 {
        for (k, fk) in f.iter_mut().enumerate() {
            *fk = 1.0 / (2.0 * k as f64 + 1.0) - t / (2.0 * k as f64 + 3.0);
        }
        return f;
    }
    if t <= 40.0 {
        let emt = (-t).exp();
        // F_m(t) = e^{-t} Σ_i (2t)^i / ((2m+1)(2m+3)…(2m+2i+1))
        let mut term = 1.0 / (2.0 * m as f64 + 1.0);
        let mut sum = term;
        let mut i = 0usize;
        loop {
            term *= 2.0 * t / (2.0 * (m + i) as f64 + 3.0);
            sum += term;
            i += 1;
            if term < sum * 1e-17 || i > 400 {
                break;
            }
        }
        f[m] = emt * sum;
        for k in (0..m).rev() {
            f[k] = (2.0 * t * f[k + 1] + emt) / (2.0 * k as f64 + 1.0);
        }
    } else {
        let emt = (-t).exp();
        f[0] = 0.5 * (std::f64::consts::PI / t).sqrt();
        for k in 0..m {
            f[k + 1] = ((2.0 * k as f64 + 1.0) * f[k] - emt) / (2.0 * t);
        }
    }
    f
}

/// F₀ applied to a jet, using dFₘ/dt = −Fₘ₊₁ for the outer derivatives.
pub fn boys0_jet(t: &Jet) -> Jet {
    let order = t.order();
    let f = boys(order, t.value());
    let mut outer = Vec::with_capacity(order + 1);
    let mut factorial = 1.0;
    for (m, fm) in f.iter().enumerate() {
        if m > 0 {
            factorial *= m as f64;
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        outer.push(sign * fm / factorial);
    }
    t.compose(&outer)
}
