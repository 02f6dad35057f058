//! Scalar spectral symbols `lambda -> m(lambda)` on `[0, inf)`.
//!
//! A [`Symbol`] is applied either as a Fourier multiplier `m(|k|)` or through
//! functional calculus as `m(sqrt(H))`. Support and smoothness-scale metadata
//! drive the Chebyshev degree heuristics of the spectral module.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::bump;

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolKind {
    /// `chi_N`, supported in `[N/2, 2N]`.
    DyadicBump { n: f64 },
    /// Discretized smoothed truncation symbol `m_N` (1 below `N`, decaying
    /// like `(N/lambda)^(1-s)` above `2N`).
    ISymbol { n: f64, s: f64 },
    /// Renormalized bump `m(M) chi_M / m`, supported in `[M/2, 2M]`.
    QBump { m: f64, n: f64, s: f64 },
    /// `exp(-i t lambda^2)`.
    Propagator { t: f64 },
    /// `lambda^s` above `floor`, constant below `floor/2`, smooth blend between.
    Power { s: f64, floor: f64 },
    Custom,
}

/// A radial spectral symbol with support and smoothness metadata.
#[derive(Clone)]
pub struct Symbol {
    kind: SymbolKind,
    label: String,
    /// `[support_lo, support_hi]`: the symbol vanishes outside (hi may be inf).
    support: (f64, f64),
    /// Smallest scale over which the symbol varies; smaller gap means a
    /// higher Chebyshev degree.
    gap: f64,
    real: bool,
    eval_fn: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symbol")
            .field("kind", &self.kind)
            .field("label", &self.label)
            .field("support", &self.support)
            .field("gap", &self.gap)
            .finish()
    }
}

/// Value of the truncation symbol at a dyadic point `M`.
///
/// `1` for `M <= N`; `(N/M)^(1-s)` for `M >= 2N` (so `2^(s-1)` at `M = 2N`,
/// matching the continuous branch).
pub fn i_symbol_dyadic_value(m: f64, n: f64, s: f64) -> f64 {
    if m <= n {
        1.0
    } else {
        (n / m).powf(1.0 - s)
    }
}

/// Discretized truncation symbol, written in the telescoped form
/// `1 - sum_M (1 - m_N(M)) chi_M(lambda)` so it is exactly 1 on
/// `[0, N]` (including `lambda = 0`) without any low-frequency truncation.
pub fn i_symbol_eval(lambda: f64, n: f64, s: f64) -> f64 {
    if lambda <= n {
        return 1.0;
    }
    let mut v = 1.0;
    // Only dyadic M in [lambda/2, 2*lambda] contribute.
    for m in bump::dyadic_range(lambda, lambda) {
        if m > n {
            v -= (1.0 - i_symbol_dyadic_value(m, n, s)) * bump::chi_scaled(lambda, m);
        }
    }
    v
}

impl Symbol {
    fn new(
        kind: SymbolKind,
        label: impl Into<String>,
        support: (f64, f64),
        gap: f64,
        real: bool,
        eval_fn: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    ) -> Self {
        Symbol {
            kind,
            label: label.into(),
            support,
            gap,
            real,
            eval_fn,
        }
    }

    /// The identity symbol `m == 1`.
    pub fn one() -> Self {
        Symbol::new(
            SymbolKind::Custom,
            "one",
            (0.0, f64::INFINITY),
            f64::INFINITY,
            true,
            Arc::new(|_| Complex64::new(1.0, 0.0)),
        )
    }

    /// Dyadic bump `chi_N`, supported in `[N/2, 2N]`.
    pub fn dyadic_bump(n: f64) -> Self {
        assert!(n > 0.0, "dyadic bump scale must be positive");
        Symbol::new(
            SymbolKind::DyadicBump { n },
            format!("chi_{n}"),
            (n / 2.0, 2.0 * n),
            n / 4.0,
            true,
            Arc::new(move |l| Complex64::new(bump::chi_scaled(l, n), 0.0)),
        )
    }

    /// A scaled copy `phi_N = phi(./N)` of a custom profile supported in `[1, 2]`.
    pub fn scaled_profile(
        profile: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        label: &str,
        n: f64,
    ) -> Self {
        Symbol::new(
            SymbolKind::Custom,
            format!("{label}_{n}"),
            (n, 2.0 * n),
            n / 4.0,
            true,
            Arc::new(move |l| Complex64::new(profile(l / n), 0.0)),
        )
    }

    /// Smoothed truncation symbol `m_N` for smoothing strength `s in (1/2, 1)`.
    pub fn i_symbol(n: f64, s: f64) -> Self {
        assert!(n >= 4.0 && bump::is_dyadic(n), "N must be dyadic >= 4");
        assert!(s > 0.5 && s < 1.0, "s must lie in (1/2, 1)");
        Symbol::new(
            SymbolKind::ISymbol { n, s },
            format!("m_{{N={n},s={s}}}"),
            (0.0, f64::INFINITY),
            n / 4.0,
            true,
            Arc::new(move |l| Complex64::new(i_symbol_eval(l, n, s), 0.0)),
        )
    }

    /// Reciprocal truncation symbol `1/m_N` (the inverse of [`Symbol::i_symbol`]).
    pub fn i_symbol_inverse(n: f64, s: f64) -> Self {
        assert!(n >= 4.0 && bump::is_dyadic(n), "N must be dyadic >= 4");
        assert!(s > 0.5 && s < 1.0, "s must lie in (1/2, 1)");
        Symbol::new(
            SymbolKind::Custom,
            format!("1/m_{{N={n},s={s}}}"),
            (0.0, f64::INFINITY),
            n / 4.0,
            true,
            Arc::new(move |l| Complex64::new(1.0 / i_symbol_eval(l, n, s), 0.0)),
        )
    }

    /// Renormalized projection bump `chi~_M = m_N(M) chi_M / m_N`, the symbol
    /// of the `Q_M` projections. Supported in `[M/2, 2M]`.
    pub fn q_bump(m: f64, n: f64, s: f64) -> Self {
        assert!(bump::is_dyadic(m), "M must be dyadic");
        Symbol::new(
            SymbolKind::QBump { m, n, s },
            format!("qchi_{{M={m},N={n},s={s}}}"),
            (m / 2.0, 2.0 * m),
            m / 4.0,
            true,
            Arc::new(move |l| {
                let num = i_symbol_dyadic_value(m, n, s) * bump::chi_scaled(l, m);
                if num == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(num / i_symbol_eval(l, n, s), 0.0)
                }
            }),
        )
    }

    /// Linear propagator symbol `exp(-i t lambda^2)`.
    pub fn propagator(t: f64) -> Self {
        Symbol::new(
            SymbolKind::Propagator { t },
            format!("exp(-i {t} lambda^2)"),
            (0.0, f64::INFINITY),
            f64::INFINITY, // degree control handled analytically for propagators
            false,
            Arc::new(move |l| Complex64::new(0.0, -t * l * l).exp()),
        )
    }

    /// Power symbol `lambda^s` with a smooth low-frequency floor: exactly
    /// `lambda^s` for `lambda >= floor`, constant `floor^s` below `floor/2`.
    /// The floor keeps the symbol smooth through `lambda = 0` (negative
    /// powers stay finite; fractional powers lose their branch point).
    pub fn power(s: f64, floor: f64) -> Self {
        assert!(floor > 0.0, "power floor must be positive");
        Symbol::new(
            SymbolKind::Power { s, floor },
            format!("lambda^{s} (floor {floor:.3e})"),
            (0.0, f64::INFINITY),
            floor / 4.0,
            true,
            Arc::new(move |l| {
                let v = if l >= floor {
                    l.powf(s)
                } else {
                    let w = bump::plateau(2.0 * l / floor);
                    let tail = if l > 0.0 { l.powf(s) } else { 0.0 };
                    w * floor.powf(s) + (1.0 - w) * tail
                };
                Complex64::new(v, 0.0)
            }),
        )
    }

    /// Arbitrary user symbol.
    pub fn custom(
        label: impl Into<String>,
        support: (f64, f64),
        gap: f64,
        real: bool,
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Symbol::new(SymbolKind::Custom, label, support, gap, real, Arc::new(f))
    }

    /// Pointwise product of two symbols.
    pub fn product(&self, other: &Symbol) -> Symbol {
        let a = self.eval_fn.clone();
        let b = other.eval_fn.clone();
        let lo = self.support.0.max(other.support.0);
        let hi = self.support.1.min(other.support.1);
        Symbol::new(
            SymbolKind::Custom,
            format!("{} * {}", self.label, other.label),
            (lo, hi),
            self.gap.min(other.gap),
            self.real && other.real,
            Arc::new(move |l| a(l) * b(l)),
        )
    }

    pub fn eval(&self, lambda: f64) -> Complex64 {
        if lambda < self.support.0 || lambda > self.support.1 {
            return Complex64::new(0.0, 0.0);
        }
        (self.eval_fn)(lambda)
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Sup of `|m|` sampled over `[0, hi]` (for contraction bounds).
    pub fn sup_abs(&self, hi: f64) -> f64 {
        let mut sup: f64 = 0.0;
        let samples = 4096;
        for i in 0..=samples {
            let l = hi * i as f64 / samples as f64;
            sup = sup.max(self.eval(l).norm());
        }
        sup
    }
}
