//! Minimal double-double arithmetic for series accumulation.
//!
//! Error-free transformations (two-sum, two-product via FMA) give an
//! effective ~32 significant digits, which absorbs the cancellation in the
//! ascending Bessel and hypergeometric series at moderate arguments.

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    #[inline]
    pub fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        self.add(Dd::from(x))
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        let p2 = p2 + self.lo * x;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let (p1, p2) = two_prod(q1, x);
        let r = self.add(Dd { hi: -p1, lo: -p2 });
        let q2 = (r.hi + r.lo) / x;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.add(other.mul_f64(q1).neg());
        let q2 = (r.hi + r.lo) / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn abs_value(self) -> f64 {
        self.value().abs()
    }
}

/// Complex double-double, used by the complex-order Bessel series.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Self {
        Cdd {
            re: Dd::from(re),
            im: Dd::from(im),
        }
    }

    #[inline]
    pub fn add(self, other: Cdd) -> Cdd {
        Cdd {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Cdd {
        Cdd {
            re: self.re.mul_f64(x),
            im: self.im.mul_f64(x),
        }
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Cdd {
        Cdd {
            re: self.re.div_f64(x),
            im: self.im.div_f64(x),
        }
    }

    /// Divide by a complex double via the conjugate trick; the divisor is
    /// taken at working precision.
    pub fn div_c64(self, re: f64, im: f64) -> Cdd {
        let denom = re * re + im * im;
        let num_re = self.re.mul_f64(re).add(self.im.mul_f64(im));
        let num_im = self.im.mul_f64(re).add(self.re.mul_f64(im).neg());
        Cdd {
            re: num_re.div_f64(denom),
            im: num_im.div_f64(denom),
        }
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.re.value().hypot(self.im.value())
    }
}
