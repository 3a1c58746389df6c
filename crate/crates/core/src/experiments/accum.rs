//! Mergeable log-space accumulators over a fixed chunk tree.

/// sum of e^{w} kept as (shift, scaled) with sum = scaled * e^{shift}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSum {
    pub shift: f64,
    pub scaled: f64,
}

impl Default for LogSum {
    fn default() -> Self {
        LogSum { shift: f64::NEG_INFINITY, scaled: 0.0 }
    }
}

impl LogSum {
    pub fn push(&mut self, w: f64) {
        if w > self.shift {
            self.scaled = self.scaled * (self.shift - w).exp() + 1.0;
            self.shift = w;
        } else {
            self.scaled += (w - self.shift).exp();
        }
    }

    pub fn merge(&self, o: &LogSum) -> LogSum {
        if o.scaled == 0.0 {
            return *self;
        }
        if self.scaled == 0.0 {
            return *o;
        }
        let shift = self.shift.max(o.shift);
        LogSum {
            shift,
            scaled: self.scaled * (self.shift - shift).exp() + o.scaled * (o.shift - shift).exp(),
        }
    }

    pub fn ln(&self) -> f64 {
        self.shift + self.scaled.ln()
    }
}

/// Log-sum-exp of T and T^2 plus Welford moments of log T.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Acc {
    pub count: u64,
    pub sum: LogSum,
    pub sum_sq: LogSum,
    pub mean: f64,
    pub m2: f64,
}

pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

impl Acc {
    pub fn push(&mut self, w: f64) {
        self.count += 1;
        self.sum.push(w);
        self.sum_sq.push(2.0 * w);
        let d = w - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (w - self.mean);
    }

    pub fn merge(&self, o: &Acc) -> Acc {
        if self.count == 0 {
            return *o;
        }
        if o.count == 0 {
            return *self;
        }
        let count = self.count + o.count;
        let d = o.mean - self.mean;
        let (na, nb) = (self.count as f64, o.count as f64);
        Acc {
            count,
            sum: self.sum.merge(&o.sum),
            sum_sq: self.sum_sq.merge(&o.sum_sq),
            mean: self.mean + d * nb / count as f64,
            m2: self.m2 + o.m2 + d * d * na * nb / count as f64,
        }
    }

    /// log sum T
    pub fn log_sum(&self) -> f64 {
        self.sum.ln()
    }

    /// log of (1/N) sum T
    pub fn log_mean(&self) -> f64 {
        self.log_sum() - (self.count as f64).ln()
    }

    /// Empirical relative variance E T^2 / (E T)^2.
    pub fn log_rel_second(&self) -> f64 {
        self.sum_sq.ln() - (self.count as f64).ln() - 2.0 * self.log_mean()
    }

    pub fn var_log(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }
}

/// Pairwise merge in index order; the shape depends only on the length.
pub fn tree_merge(parts: &[Acc]) -> Acc {
    match parts.len() {
        0 => Acc::default(),
        1 => parts[0],
        k => tree_merge(&parts[..k / 2]).merge(&tree_merge(&parts[k / 2..])),
    }
}
