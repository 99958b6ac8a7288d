//! Minimal double-double arithmetic: a value is the unevaluated sum
//! `hi + lo` of two doubles with `|lo| <= ulp(hi)/2`, worth roughly 32
//! significant digits.
//!
//! Only the operations the Bessel series and the Gamma recurrences need are
//! provided. The error-free transformations are the classical ones (Knuth's
//! two-sum, FMA-based two-prod); the compound operations follow the usual
//! QD-library recipes and stay within a few units of the 106-bit last place,
//! far more accurate than any caller here requires.

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires |a| >= |b| (or a == 0).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

pub(crate) const DD_PI: Dd = Dd {
    hi: 3.141592653589793,
    lo: 1.2246467991473532e-16,
};

pub(crate) const DD_SQRT_PI: Dd = Dd {
    hi: 1.772453850905516,
    lo: -7.666586499825799e-17,
};

/// 1 / Gamma(3/2) = 2 / sqrt(pi).
pub(crate) const DD_TWO_OVER_SQRT_PI: Dd = Dd {
    hi: 1.1283791670955126,
    lo: 1.533545961316588e-17,
};

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Self {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        // remainder self - q1 * b, with the product split exactly
        let (p, e) = two_prod(q1, b);
        let (r, r2) = two_sum(self.hi, -p);
        let q2 = (r + (r2 + self.lo - e)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Self {
        if !other.hi.is_finite() {
            return Dd::from_f64(self.hi / other.hi);
        }
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    /// One Newton step on top of the double-precision square root.
    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return Dd::from_f64(0.0);
        }
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let d = self.add(Dd { hi: -p, lo: -e });
        let corr = d.to_f64() / (2.0 * s);
        let (hi, lo) = quick_two_sum(s, corr);
        Dd { hi, lo }
    }
}
