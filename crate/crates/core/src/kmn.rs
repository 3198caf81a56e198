//! Closed-form values of `D'(K_{m,n})` and `OD'^-(K_{m,n})` for `m < n`.
//!
//! With `r >= 2` the radix satisfying `(r-1)^m < n <= r^m` and
//! `t = ceil(log_r m)`, the index is `r` when `n <= r^m - t - 1` and `r + 1`
//! when `n >= r^m - t + 1`. The single value `n = r^m - t` is settled by
//! exact search when the graph is small enough.

use serde::Serialize;

use crate::distinguishing::dprime;
use crate::error::{Error, Result};
use crate::graph::{Graph, Target};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum PredictionKind {
    Exact { value: u32 },
    Boundary { low: u32, high: u32 },
    Resolved { value: u32, via: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub m: u64,
    pub n: u64,
    pub r: u64,
    #[serde(flatten)]
    pub kind: PredictionKind,
}

impl Prediction {
    /// The value when it is determined.
    pub fn value(&self) -> Option<u32> {
        match self.kind {
            PredictionKind::Exact { value } | PredictionKind::Resolved { value, .. } => Some(value),
            PredictionKind::Boundary { .. } => None,
        }
    }
}

fn pow(r: u64, e: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(r as u128);
    }
    acc
}

/// Least `r >= 2` with `n <= r^m`; then `(r-1)^m < n` holds as well.
pub fn radix(m: u64, n: u64) -> u64 {
    let mut r = 2;
    while pow(r, m) < n as u128 {
        r += 1;
    }
    r
}

/// `ceil(log_r x)`: the least `t` with `r^t >= x`.
pub fn ceil_log(r: u64, x: u64) -> u64 {
    let mut t = 0;
    while pow(r, t) < x as u128 {
        t += 1;
    }
    t
}

fn check(m: u64, n: u64) -> Result<()> {
    if m < 2 || n <= m {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= m < n, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// `limits.edge_cap` bounds `m * n` for the exact fallback.
pub fn dprime_kmn(m: u64, n: u64, limits: &Limits) -> Result<Prediction> {
    check(m, n)?;
    let r = radix(m, n);
    let t = ceil_log(r, m) as u128;
    let top = pow(r, m);
    let n128 = n as u128;
    let rr = r as u32;
    let kind = if n128 + t < top {
        PredictionKind::Exact { value: rr }
    } else if n128 + t > top {
        PredictionKind::Exact { value: rr + 1 }
    } else if (m * n) as usize <= limits.edge_cap && (m + n) as usize <= crate::graph::MAX_VERTICES {
        let g = Graph::complete_bipartite(m as usize, n as usize);
        PredictionKind::Resolved {
            value: dprime(Target::Graph(&g))?.value,
            via: "exact-fallback",
        }
    } else {
        PredictionKind::Boundary {
            low: rr,
            high: rr + 1,
        }
    };
    Ok(Prediction { m, n, r, kind })
}

/// `dprime_kmn` with `x -> ceil(x / 2)` applied to each branch. A boundary
/// whose two halves coincide (odd `r`) is exact.
pub fn od_minus_kmn(m: u64, n: u64, limits: &Limits) -> Result<Prediction> {
    let p = dprime_kmn(m, n, limits)?;
    let half = |x: u32| x.div_ceil(2);
    let kind = match p.kind {
        PredictionKind::Exact { value } => PredictionKind::Exact { value: half(value) },
        PredictionKind::Resolved { value, via } => PredictionKind::Resolved {
            value: half(value),
            via,
        },
        PredictionKind::Boundary { low, high } if half(low) == half(high) => {
            PredictionKind::Exact { value: half(low) }
        }
        PredictionKind::Boundary { low, high } => PredictionKind::Boundary {
            low: half(low),
            high: half(high),
        },
    };
    Ok(Prediction { kind, ..p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn examples() {
        assert_eq!(dprime_kmn(2, 4, &l()).unwrap().kind, PredictionKind::Exact { value: 3 });
        assert_eq!(dprime_kmn(3, 5, &l()).unwrap().kind, PredictionKind::Exact { value: 2 });
        assert_eq!(
            dprime_kmn(2, 3, &l()).unwrap().kind,
            PredictionKind::Resolved {
                value: 2,
                via: "exact-fallback"
            }
        );
        assert_eq!(od_minus_kmn(2, 4, &l()).unwrap().kind, PredictionKind::Exact { value: 2 });
        assert_eq!(od_minus_kmn(3, 5, &l()).unwrap().kind, PredictionKind::Exact { value: 1 });
        assert_eq!(od_minus_kmn(2, 3, &l()).unwrap().value(), Some(1));
        assert!(dprime_kmn(1, 3, &l()).is_err());
        assert!(dprime_kmn(3, 3, &l()).is_err());
    }

    #[test]
    fn json_shape() {
        let p = dprime_kmn(2, 4, &l()).unwrap();
        assert_eq!(
            serde_json::to_value(p).unwrap(),
            serde_json::json!({"m": 2, "n": 4, "r": 2, "kind": "Exact", "value": 3})
        );
    }

    #[test]
    fn boundary_without_fallback() {
        let tiny = Limits { edge_cap: 1, ..l() };
        let p = dprime_kmn(2, 3, &tiny).unwrap();
        assert_eq!(p.kind, PredictionKind::Boundary { low: 2, high: 3 });
        assert_eq!(od_minus_kmn(2, 3, &tiny).unwrap().kind, PredictionKind::Boundary { low: 1, high: 2 });
        // r = 3: m = 2, n = 9 - 1 = 8
        let p = od_minus_kmn(2, 8, &tiny).unwrap();
        assert_eq!((p.r, p.kind), (3, PredictionKind::Exact { value: 2 }));
    }

    #[test]
    fn logs() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(2, 3), 2);
        assert_eq!(ceil_log(3, 9), 2);
        assert_eq!(ceil_log(3, 10), 3);
    }

    proptest! {
        #[test]
        fn radix_brackets_n(m in 2u64..12, extra in 1u64..100_000) {
            let n = m + extra;
            let r = radix(m, n);
            prop_assert!(r >= 2);
            prop_assert!(pow(r - 1, m) < n as u128);
            prop_assert!(n as u128 <= pow(r, m));
        }
    }
}
