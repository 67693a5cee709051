use crate::error::Error;

/// A deterministic objective function to be minimized.
///
/// Implementations must be pure: the same `x` always yields the same value,
/// and evaluation must not mutate observable state. All optimizers charge
/// evaluations through [`evaluate_counted`], never by calling this directly.
pub trait Objective {
    fn eval(&self, x: &[f64]) -> f64;
}

impl<F: Fn(&[f64]) -> f64> Objective for F {
    fn eval(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// Control signal raised when an evaluation is requested past the budget.
/// This is expected termination, not a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExhausted;

impl std::fmt::Display for BudgetExhausted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("evaluation budget exhausted")
    }
}

/// Hard cap on objective evaluations for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalBudget {
    max_evals: u64,
    used: u64,
}

impl EvalBudget {
    pub fn new(max_evals: u64) -> Result<Self, Error> {
        if max_evals == 0 {
            return Err(Error::param("max_evals", "must be at least 1"));
        }
        Ok(EvalBudget { max_evals, used: 0 })
    }

    pub fn max_evals(&self) -> u64 {
        self.max_evals
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.max_evals - self.used
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.max_evals
    }
}

/// Evaluates `obj` at `x`, charging exactly one unit of budget.
///
/// Fails without evaluating when the budget is already spent, so `used`
/// never exceeds `max_evals`.
pub fn evaluate_counted<O: Objective + ?Sized>(
    obj: &O,
    x: &[f64],
    budget: &mut EvalBudget,
) -> Result<f64, BudgetExhausted> {
    if budget.is_exhausted() {
        return Err(BudgetExhausted);
    }
    budget.used += 1;
    Ok(obj.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_every_evaluation() {
        let sphere = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let mut budget = EvalBudget::new(3).unwrap();
        assert_eq!(evaluate_counted(&sphere, &[2.0], &mut budget), Ok(4.0));
        assert_eq!(budget.used(), 1);
        assert_eq!(budget.remaining(), 2);
        evaluate_counted(&sphere, &[0.0], &mut budget).unwrap();
        evaluate_counted(&sphere, &[1.0], &mut budget).unwrap();
        assert!(budget.is_exhausted());
        assert_eq!(
            evaluate_counted(&sphere, &[1.0], &mut budget),
            Err(BudgetExhausted)
        );
        assert_eq!(budget.used(), 3);
    }

    #[test]
    fn zero_budget_is_rejected() {
        assert!(EvalBudget::new(0).is_err());
    }
}
