//! Economic primitives: the value function, the two cost functions, and the
//! derived first-best quantities, with shape validation on a fixed grid.

use crate::interp::MonotoneCubic;
use crate::numeric::{central_diff, golden_max};
use crate::{Error, Result};

/// Number of equally spaced points on `[0, q_bar]` used for all shape checks.
const GRID_POINTS: usize = 10_001;

/// Relative step for central-difference derivative checks.
const DERIV_STEP_REL: f64 = 1e-6;

/// Agent's private cost type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentType {
    /// Efficient (low-cost) type.
    Low,
    /// Inefficient (high-cost) type.
    High,
}

/// Per-period value of production to the principal.
#[derive(Debug, Clone)]
pub enum ValueFn {
    /// `v(q) = a * sqrt(q)` with `a > 0`.
    Sqrt { a: f64 },
    /// User-supplied table, interpolated monotone-cubically.
    Tabulated(MonotoneCubic),
}

impl ValueFn {
    fn eval(&self, q: f64) -> f64 {
        match self {
            ValueFn::Sqrt { a } => a * q.sqrt(),
            ValueFn::Tabulated(c) => c.eval(q),
        }
    }
}

/// Per-period production cost of one type.
#[derive(Debug, Clone)]
pub enum CostFn {
    /// `C(q) = theta * q`.
    Linear { theta: f64 },
    /// User-supplied table, interpolated monotone-cubically.
    Tabulated(MonotoneCubic),
}

impl CostFn {
    fn eval(&self, q: f64) -> f64 {
        match self {
            CostFn::Linear { theta } => theta * q,
            CostFn::Tabulated(c) => c.eval(q),
        }
    }
}

/// Surplus-maximizing quantities and surpluses for both types.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FirstBest {
    pub q_star_l: f64,
    pub q_star_h: f64,
    pub pi_star_l: f64,
    pub pi_star_h: f64,
    /// Per-period rent a low type earns in the pool at the undistorted
    /// pooling quantity: `delta_c(q_star_h)`.
    pub delta_c_at_qstar_h: f64,
}

/// Verdict of the prior-size check `alpha0 < pi_h(q*_h) / pi_l(q*_l)`.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct PriorCheck {
    pub holds: bool,
    /// The upper bound `pi_h(q*_h) / pi_l(q*_l)` itself.
    pub bound: f64,
    /// `bound - alpha0`; positive iff the check holds.
    pub margin: f64,
}

/// Immutable description of the contracting environment.
#[derive(Debug, Clone)]
pub struct Environment {
    value: ValueFn,
    cost_l: CostFn,
    cost_h: CostFn,
    q_bar: f64,
    alpha0: f64,
    delta: f64,
    first_best: FirstBest,
}

impl Environment {
    /// Builds the environment used throughout: `v(q) = a*sqrt(q)` and
    /// linear costs `theta_l * q`, `theta_h * q`.
    pub fn builtin(
        a: f64,
        theta_l: f64,
        theta_h: f64,
        q_bar: f64,
        alpha0: f64,
        delta: f64,
    ) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::InvalidEnvironment(format!(
                "value coefficient must be positive, got {a}"
            )));
        }
        if !(theta_l > 0.0 && theta_h > theta_l) {
            return Err(Error::InvalidEnvironment(format!(
                "need 0 < theta_L < theta_H, got theta_L={theta_l}, theta_H={theta_h}"
            )));
        }
        Self::from_parts(
            ValueFn::Sqrt { a },
            CostFn::Linear { theta: theta_l },
            CostFn::Linear { theta: theta_h },
            q_bar,
            alpha0,
            delta,
        )
    }

    /// Builds an environment from arbitrary value/cost specifications and
    /// validates every shape assumption on the grid.
    pub fn from_parts(
        value: ValueFn,
        cost_l: CostFn,
        cost_h: CostFn,
        q_bar: f64,
        alpha0: f64,
        delta: f64,
    ) -> Result<Self> {
        if !(q_bar > 0.0 && q_bar.is_finite()) {
            return Err(Error::InvalidEnvironment(format!(
                "q_bar must be positive and finite, got {q_bar}"
            )));
        }
        if !(alpha0 > 0.0 && alpha0 < 1.0) {
            return Err(Error::InvalidEnvironment(format!(
                "alpha0 must lie in (0,1), got {alpha0}"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidEnvironment(format!(
                "delta must lie in (0,1), got {delta}"
            )));
        }
        let mut env = Self {
            value,
            cost_l,
            cost_h,
            q_bar,
            alpha0,
            delta,
            first_best: FirstBest {
                q_star_l: 0.0,
                q_star_h: 0.0,
                pi_star_l: 0.0,
                pi_star_h: 0.0,
                delta_c_at_qstar_h: 0.0,
            },
        };
        env.validate_shapes()?;
        env.first_best = env.compute_first_best()?;
        Ok(env)
    }

    /// Parses the plain-text `key=value` config format.
    ///
    /// Recognized keys: `value` (`sqrt` or `sqrt2`), `a`, `theta_L`,
    /// `theta_H`, `q_bar`, `alpha0`, `delta`. Lines starting with `#` and
    /// blank lines are ignored; unknown keys are an error.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut a: Option<f64> = None;
        let mut value_form: Option<String> = None;
        let mut theta_l = None;
        let mut theta_h = None;
        let mut q_bar = None;
        let mut alpha0 = None;
        let mut delta = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let key = key.trim();
            let val = val.trim();
            let parse = |v: &str| -> Result<f64> {
                v.parse::<f64>()
                    .map_err(|_| Error::Config(format!("line {}: bad number '{v}'", lineno + 1)))
            };
            match key {
                "value" => value_form = Some(val.to_string()),
                "a" => a = Some(parse(val)?),
                "theta_L" => theta_l = Some(parse(val)?),
                "theta_H" => theta_h = Some(parse(val)?),
                "q_bar" => q_bar = Some(parse(val)?),
                "alpha0" => alpha0 = Some(parse(val)?),
                "delta" => delta = Some(parse(val)?),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }

        match value_form.as_deref() {
            None | Some("sqrt") | Some("sqrt2") => {}
            Some(other) => {
                return Err(Error::Config(format!(
                    "unsupported value form '{other}' (expected 'sqrt' or 'sqrt2')"
                )))
            }
        }
        let missing = |k: &str| Error::Config(format!("missing required key '{k}'"));
        Self::builtin(
            a.unwrap_or(2.0),
            theta_l.ok_or_else(|| missing("theta_L"))?,
            theta_h.ok_or_else(|| missing("theta_H"))?,
            q_bar.ok_or_else(|| missing("q_bar"))?,
            alpha0.ok_or_else(|| missing("alpha0"))?,
            delta.ok_or_else(|| missing("delta"))?,
        )
    }

    /// Same environment with a different discount factor.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidEnvironment(format!(
                "delta must lie in (0,1), got {delta}"
            )));
        }
        let mut env = self.clone();
        env.delta = delta;
        Ok(env)
    }

    pub fn q_bar(&self) -> f64 {
        self.q_bar
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn first_best(&self) -> &FirstBest {
        &self.first_best
    }

    pub fn value(&self, q: f64) -> f64 {
        self.value.eval(q)
    }

    pub fn cost(&self, ty: AgentType, q: f64) -> f64 {
        match ty {
            AgentType::Low => self.cost_l.eval(q),
            AgentType::High => self.cost_h.eval(q),
        }
    }

    /// Cost difference `C_H(q) - C_L(q)`: the per-period rent ceiling when a
    /// low type is paid the high cost for producing `q`.
    pub fn delta_c(&self, q: f64) -> f64 {
        self.cost_h.eval(q) - self.cost_l.eval(q)
    }

    /// Per-period surplus `v(q) - C_type(q)`; `q` must lie in `[0, q_bar]`.
    pub fn surplus(&self, ty: AgentType, q: f64) -> Result<f64> {
        if !(0.0..=self.q_bar).contains(&q) {
            return Err(Error::QuantityOutOfRange {
                q,
                q_bar: self.q_bar,
            });
        }
        Ok(self.pi(ty, q))
    }

    /// Unchecked surplus; callers guarantee `0 <= q <= q_bar`.
    pub fn pi(&self, ty: AgentType, q: f64) -> f64 {
        self.value.eval(q) - self.cost(ty, q)
    }

    /// Checks `alpha0 < pi_h(q*_h) / pi_l(q*_l)`: the unrevealed pool is
    /// valuable enough that the principal would never simply abandon it.
    pub fn check_assumption1(&self) -> PriorCheck {
        let fb = &self.first_best;
        let bound = fb.pi_star_h / fb.pi_star_l;
        PriorCheck {
            holds: self.alpha0 < bound,
            bound,
            margin: bound - self.alpha0,
        }
    }

    fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let q_bar = self.q_bar;
        (0..GRID_POINTS).map(move |i| q_bar * i as f64 / (GRID_POINTS - 1) as f64)
    }

    fn validate_shapes(&self) -> Result<()> {
        let qs: Vec<f64> = self.grid().collect();

        let v0 = self.value.eval(0.0);
        if v0.abs() > 1e-12 {
            return Err(Error::InvalidEnvironment(format!("v(0) must be 0, got {v0}")));
        }
        for (ty, name) in [(AgentType::Low, "C_L"), (AgentType::High, "C_H")] {
            let c0 = self.cost(ty, 0.0);
            if c0.abs() > 1e-12 {
                return Err(Error::InvalidEnvironment(format!(
                    "{name}(0) must be 0, got {c0}"
                )));
            }
        }

        // v strictly increasing and strictly concave (pairwise slope test).
        let mut prev_slope = f64::INFINITY;
        for w in qs.windows(2) {
            let dv = self.value.eval(w[1]) - self.value.eval(w[0]);
            if dv <= 0.0 {
                return Err(Error::InvalidEnvironment(format!(
                    "v is not strictly increasing near q={}",
                    w[0]
                )));
            }
            let slope = dv / (w[1] - w[0]);
            if slope >= prev_slope {
                return Err(Error::InvalidEnvironment(format!(
                    "v is not strictly concave near q={}",
                    w[0]
                )));
            }
            prev_slope = slope;
        }

        // delta_c nonnegative, zero at 0, strictly increasing, concave.
        if self.delta_c(0.0).abs() > 1e-12 {
            return Err(Error::InvalidEnvironment("delta_c(0) must be 0".into()));
        }
        let mut prev_slope = f64::INFINITY;
        for w in qs.windows(2) {
            let d0 = self.delta_c(w[0]);
            let d1 = self.delta_c(w[1]);
            if d0 < -1e-12 {
                return Err(Error::InvalidEnvironment(format!(
                    "delta_c negative at q={}",
                    w[0]
                )));
            }
            if d1 <= d0 {
                return Err(Error::InvalidEnvironment(format!(
                    "delta_c (hence C_H' - C_L') not strictly increasing near q={}",
                    w[0]
                )));
            }
            let slope = (d1 - d0) / (w[1] - w[0]);
            // Concavity is weak: linear costs are admissible.
            if slope > prev_slope * (1.0 + 1e-9) + 1e-12 {
                return Err(Error::InvalidEnvironment(format!(
                    "delta_c is not concave near q={}",
                    w[0]
                )));
            }
            prev_slope = slope;
        }
        Ok(())
    }

    fn compute_first_best(&self) -> Result<FirstBest> {
        let (q_star_l, pi_star_l) = self.maximize_surplus(AgentType::Low, "low")?;
        let (q_star_h, pi_star_h) = self.maximize_surplus(AgentType::High, "high")?;
        if !(q_star_h < q_star_l) {
            return Err(Error::InvalidEnvironment(format!(
                "need q*_H < q*_L, got q*_H={q_star_h}, q*_L={q_star_l}"
            )));
        }
        if !(0.0 < pi_star_h && pi_star_h < pi_star_l) {
            return Err(Error::InvalidEnvironment(format!(
                "need 0 < pi*_H < pi*_L, got pi*_H={pi_star_h}, pi*_L={pi_star_l}"
            )));
        }
        Ok(FirstBest {
            q_star_l,
            q_star_h,
            pi_star_l,
            pi_star_h,
            delta_c_at_qstar_h: self.delta_c(q_star_h),
        })
    }

    /// Grid-seeded golden-section maximization of `pi_type` on `[0, q_bar]`.
    fn maximize_surplus(&self, ty: AgentType, name: &'static str) -> Result<(f64, f64)> {
        let step = self.q_bar / (GRID_POINTS - 1) as f64;
        let mut best_i = 0;
        let mut best = f64::NEG_INFINITY;
        for (i, q) in self.grid().enumerate() {
            let v = self.pi(ty, q);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        if best_i == 0 || best_i == GRID_POINTS - 1 {
            return Err(Error::BoundaryMaximizer(name));
        }
        let lo = (best_i as f64 - 2.0) * step;
        let hi = ((best_i as f64 + 2.0) * step).min(self.q_bar);
        let (q_star, pi_star) = golden_max(|q| self.pi(ty, q), lo, hi, 1e-10);

        // Interior stationarity within derivative tolerance.
        let h = DERIV_STEP_REL * self.q_bar;
        let d = central_diff(|q| self.pi(ty, q), q_star, h);
        if d.abs() > 1e-7 * (1.0 + pi_star.abs()) {
            return Err(Error::InvalidEnvironment(format!(
                "surplus for the {name} type is not stationary at its maximizer \
                 (pi'={d:.3e} at q={q_star})"
            )));
        }
        Ok((q_star, pi_star))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env_2_3() -> Environment {
        Environment::builtin(2.0, 2.0, 3.0, 1.0, 0.5, 0.99).unwrap()
    }

    #[test]
    fn surplus_closed_forms() {
        let env = env_2_3();
        // v=2*sqrt(q), theta_H=3, q=1/9 -> 2/3 - 1/3 = 1/3.
        let s = env.surplus(AgentType::High, 1.0 / 9.0).unwrap();
        assert!((s - 1.0 / 3.0).abs() < 1e-12);
        // theta_L=2, q=1/4 -> 1 - 1/2 = 1/2.
        let s = env.surplus(AgentType::Low, 0.25).unwrap();
        assert!((s - 0.5).abs() < 1e-12);
        // q=0 -> 0 for both types.
        assert_eq!(env.surplus(AgentType::Low, 0.0).unwrap(), 0.0);
        assert_eq!(env.surplus(AgentType::High, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn surplus_rejects_out_of_range() {
        let env = env_2_3();
        assert!(env.surplus(AgentType::Low, -0.1).is_err());
        assert!(env.surplus(AgentType::Low, 1.1).is_err());
    }

    #[test]
    fn first_best_matches_closed_form() {
        // q*_theta = 1/theta^2, pi*_theta = 1/theta for v=2sqrt(q), C=theta*q.
        let env = env_2_3();
        let fb = env.first_best();
        assert!((fb.q_star_h - 1.0 / 9.0).abs() < 1e-8);
        assert!((fb.q_star_l - 0.25).abs() < 1e-8);
        assert!((fb.pi_star_h - 1.0 / 3.0).abs() < 1e-9);
        assert!((fb.pi_star_l - 0.5).abs() < 1e-9);
        assert!((fb.delta_c_at_qstar_h - 1.0 / 9.0).abs() < 1e-8);

        let env = Environment::builtin(2.0, 1.5, 3.0, 1.0, 0.5, 0.99).unwrap();
        let fb = env.first_best();
        assert!((fb.q_star_l - 1.0 / 2.25).abs() < 1e-8);
        assert!((fb.pi_star_l - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn first_best_grid_oracle() {
        // Independent coarse grid search agrees with the golden-section result.
        let env = env_2_3();
        let mut best = (f64::NEG_INFINITY, 0.0);
        let n = 1_000_000;
        for i in 0..=n {
            let q = i as f64 / n as f64;
            let v = 2.0 * q.sqrt() - 2.0 * q;
            if v > best.0 {
                best = (v, q);
            }
        }
        assert!((env.first_best().q_star_l - best.1).abs() < 2e-6);
    }

    #[test]
    fn scaling_invariance_of_maximizers() {
        // Scaling v and both costs by c > 0 scales pi* and keeps q* fixed.
        let base = env_2_3();
        let scaled = Environment::builtin(2.0 * 3.5, 2.0 * 3.5, 3.0 * 3.5, 1.0, 0.5, 0.99).unwrap();
        let (f0, f1) = (base.first_best(), scaled.first_best());
        assert!((f0.q_star_l - f1.q_star_l).abs() < 1e-7);
        assert!((f0.q_star_h - f1.q_star_h).abs() < 1e-7);
        assert!((f1.pi_star_l - 3.5 * f0.pi_star_l).abs() < 1e-7);
        assert!((f1.pi_star_h - 3.5 * f0.pi_star_h).abs() < 1e-7);
    }

    #[test]
    fn first_best_deterministic() {
        let a = env_2_3().first_best().clone();
        let b = env_2_3().first_best().clone();
        assert_eq!(a, b);
    }

    #[test]
    fn assumption1_examples() {
        let env = env_2_3();
        let c = env.check_assumption1();
        assert!(c.holds);
        assert!((c.bound - 2.0 / 3.0).abs() < 1e-9);
        assert!((c.margin - (2.0 / 3.0 - 0.5)).abs() < 1e-9);

        // Boundary fails the strict inequality.
        let env = Environment::builtin(2.0, 2.0, 3.0, 1.0, 2.0 / 3.0, 0.99).unwrap();
        assert!(!env.check_assumption1().holds);

        let env = Environment::builtin(2.0, 2.5, 3.0, 1.0, 0.5, 0.99).unwrap();
        let c = env.check_assumption1();
        assert!(c.holds);
        assert!((c.bound - 5.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn linear_costs_have_linear_delta_c() {
        let env = env_2_3();
        for i in 0..=100 {
            let q = i as f64 / 100.0;
            assert!((env.delta_c(q) - q).abs() < 1e-12);
        }
    }

    #[test]
    fn config_round_trip() {
        let text = "value=sqrt2\na=2.0\ntheta_L=2.0\ntheta_H=3.0\nq_bar=1.0\nalpha0=0.5\ndelta=0.99\n";
        let env = Environment::from_config_str(text).unwrap();
        assert_eq!(env.delta(), 0.99);
        assert_eq!(env.alpha0(), 0.5);
        assert!((env.first_best().q_star_l - 0.25).abs() < 1e-8);
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let err = Environment::from_config_str("theta_L=2\nbogus=1\n").unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn config_requires_core_keys() {
        assert!(Environment::from_config_str("theta_L=2.0\ntheta_H=3.0\n").is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Environment::builtin(2.0, 3.0, 2.0, 1.0, 0.5, 0.99).is_err());
        assert!(Environment::builtin(2.0, 2.0, 3.0, 1.0, 0.0, 0.99).is_err());
        assert!(Environment::builtin(2.0, 2.0, 3.0, 1.0, 0.5, 1.0).is_err());
        assert!(Environment::builtin(2.0, 2.0, 3.0, -1.0, 0.5, 0.99).is_err());
        assert!(Environment::builtin(-2.0, 2.0, 3.0, 1.0, 0.5, 0.99).is_err());
    }

    #[test]
    fn boundary_maximizer_is_an_error() {
        // With q_bar = 0.05 < q*_H = 1/9, both maximizers hit the boundary.
        let err = Environment::builtin(2.0, 2.0, 3.0, 0.05, 0.5, 0.99).unwrap_err();
        assert!(matches!(err, Error::BoundaryMaximizer(_)));
    }

    #[test]
    fn tabulated_environment_close_to_builtin() {
        let xs: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
        let v = MonotoneCubic::new(xs.clone(), xs.iter().map(|x| 2.0 * x.sqrt()).collect()).unwrap();
        let cl = MonotoneCubic::new(xs.clone(), xs.iter().map(|x| 2.0 * x).collect()).unwrap();
        let ch = MonotoneCubic::new(xs.clone(), xs.iter().map(|x| 3.0 * x).collect()).unwrap();
        let env = Environment::from_parts(
            ValueFn::Tabulated(v),
            CostFn::Tabulated(cl),
            CostFn::Tabulated(ch),
            1.0,
            0.5,
            0.99,
        )
        .unwrap();
        // The sqrt kink at 0 limits tabulation accuracy near the origin;
        // away from it the first-best should be close to the analytic one.
        assert!((env.first_best().q_star_l - 0.25).abs() < 1e-3);
        assert!((env.first_best().pi_star_l - 0.5).abs() < 1e-4);
    }
}
