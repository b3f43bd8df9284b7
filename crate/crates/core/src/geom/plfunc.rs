use serde::{Deserialize, Serialize};

use super::point::Point;
use super::polyline::Polyline;
use super::GeomError;
use crate::scalar::{Rational, Scalar};

/// Where a [`PlFunction`] lives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Domain<S> {
    /// The interval spanned by the breakpoints; evaluation outside it
    /// extends by the end values.
    Interval,
    /// Circle of the given circumference; breakpoints lie in `[0, L)`.
    Circle(S),
}

/// Piecewise-linear function given by breakpoints and values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlFunction<S> {
    breakpoints: Vec<S>,
    values: Vec<S>,
    domain: Domain<S>,
}

impl<S: Scalar> PlFunction<S> {
    pub fn new(breakpoints: Vec<S>, values: Vec<S>, domain: Domain<S>) -> Result<Self, GeomError> {
        if breakpoints.len() != values.len() {
            return Err(GeomError::LengthMismatch { left: breakpoints.len(), right: values.len() });
        }
        let min_len = if matches!(domain, Domain::Interval) { 2 } else { 1 };
        if breakpoints.len() < min_len {
            return Err(GeomError::TooFewVertices(breakpoints.len()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GeomError::BreakpointsNotIncreasing);
        }
        if let Domain::Circle(l) = &domain {
            if *l <= S::zero() {
                return Err(GeomError::NonPositivePeriod);
            }
            if breakpoints[0] < S::zero() || breakpoints[breakpoints.len() - 1] >= *l {
                return Err(GeomError::BreakpointOutsidePeriod);
            }
        }
        Ok(PlFunction { breakpoints, values, domain })
    }

    /// Function on `[t0, t1]` with the given breakpoints.
    pub fn on_interval(breakpoints: Vec<S>, values: Vec<S>) -> Result<Self, GeomError> {
        Self::new(breakpoints, values, Domain::Interval)
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn domain(&self) -> &Domain<S> {
        &self.domain
    }

    /// `(t0, t1)` for an interval domain.
    pub fn interval(&self) -> Option<(S, S)> {
        match self.domain {
            Domain::Interval => Some((self.breakpoints[0].clone(), self.breakpoints[self.breakpoints.len() - 1].clone())),
            Domain::Circle(_) => None,
        }
    }

    /// Nodes of the linear pieces, including the wrap-around node for circles.
    fn nodes(&self) -> Vec<(S, S)> {
        let mut nodes: Vec<(S, S)> =
            self.breakpoints.iter().cloned().zip(self.values.iter().cloned()).collect();
        if let Domain::Circle(l) = &self.domain {
            nodes.push((self.breakpoints[0].clone() + l.clone(), self.values[0].clone()));
        }
        nodes
    }

    /// Index `i` of the piece `[b_i, b_{i+1}]` used at `t`; right-continuous
    /// choice at breakpoints. Returns `None` outside an interval domain.
    fn piece(&self, t: &S) -> Option<usize> {
        let b = &self.breakpoints;
        let last = b.len() - 1;
        if *t < b[0] || *t > b[last] {
            return None;
        }
        let i = b.partition_point(|x| x <= t);
        Some(i.saturating_sub(1).min(last.saturating_sub(1)))
    }

    fn wrap(&self, t: &S) -> S {
        match &self.domain {
            Domain::Interval => t.clone(),
            Domain::Circle(l) => {
                let k = (t.clone() / l.clone()).to_f64().floor();
                let mut r = t.clone() - l.clone() * S::from_f64(k).unwrap_or_else(S::zero);
                while r < S::zero() {
                    r = r + l.clone();
                }
                while r >= *l {
                    r = r - l.clone();
                }
                r
            }
        }
    }

    /// Evaluate; interval domains extend by constants outside `[t0, t1]`.
    pub fn eval(&self, t: &S) -> S {
        self.eval_with_slope(t).0
    }

    /// Value and slope of the piece used at `t` (zero slope outside).
    pub fn eval_with_slope(&self, t: &S) -> (S, S) {
        match &self.domain {
            Domain::Interval => {
                let b = &self.breakpoints;
                let v = &self.values;
                let last = b.len() - 1;
                if *t <= b[0] {
                    return (v[0].clone(), S::zero());
                }
                if *t >= b[last] {
                    return (v[last].clone(), S::zero());
                }
                let i = self.piece(t).unwrap_or(0);
                let slope = (v[i + 1].clone() - v[i].clone()) / (b[i + 1].clone() - b[i].clone());
                (v[i].clone() + slope.clone() * (t.clone() - b[i].clone()), slope)
            }
            Domain::Circle(_) => {
                let nodes = self.nodes();
                let mut u = self.wrap(t);
                if u < nodes[0].0 {
                    u = u + match &self.domain {
                        Domain::Circle(l) => l.clone(),
                        Domain::Interval => S::zero(),
                    };
                }
                let i = nodes.partition_point(|(x, _)| *x <= u).saturating_sub(1).min(nodes.len() - 2);
                let (x0, y0) = &nodes[i];
                let (x1, y1) = &nodes[i + 1];
                let slope = (y1.clone() - y0.clone()) / (x1.clone() - x0.clone());
                (y0.clone() + slope.clone() * (u - x0.clone()), slope)
            }
        }
    }

    /// Graph of the function over its domain (one period for circles).
    pub fn graph(&self) -> Polyline<S> {
        let pts = self.nodes().into_iter().map(|(x, y)| Point::new(x, y)).collect();
        Polyline::new(pts, false).expect("strictly increasing abscissae give a valid polyline")
    }

    pub fn to_f64(&self) -> PlFunction<f64> {
        PlFunction {
            breakpoints: self.breakpoints.iter().map(S::to_f64).collect(),
            values: self.values.iter().map(S::to_f64).collect(),
            domain: match &self.domain {
                Domain::Interval => Domain::Interval,
                Domain::Circle(l) => Domain::Circle(l.to_f64()),
            },
        }
    }
}

impl PlFunction<Rational> {
    pub fn from_f64_pairs(pairs: &[(f64, f64)]) -> Result<Self, GeomError> {
        let conv = |x: f64| Rational::from_float(x).ok_or(GeomError::NonFinite);
        let b = pairs.iter().map(|p| conv(p.0)).collect::<Result<Vec<_>, _>>()?;
        let v = pairs.iter().map(|p| conv(p.1)).collect::<Result<Vec<_>, _>>()?;
        Self::on_interval(b, v)
    }
}

/// Largest absolute slope over the pieces.
pub fn lipschitz_constant<S: Scalar>(f: &PlFunction<S>) -> S {
    f.nodes()
        .windows(2)
        .map(|w| ((w[1].1.clone() - w[0].1.clone()) / (w[1].0.clone() - w[0].0.clone())).abs())
        .fold(S::zero(), S::max_s)
}
