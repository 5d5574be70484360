//! Lookup tables for arbitrary functions and their conversion to
//! subset-firing rotation circuits.
//!
//! A lookup table fires exactly one gate per basis input. Removing its
//! `|0⟩`-controls turns every gate into a subset-firing gate; the angles are
//! then corrected by subtracting, from each gate, the corrected angles of all
//! its proper subsets. That correction is the Möbius transform on the subset
//! lattice and is computed here with the `O(n 2^n)` butterfly.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use log::warn;

use crate::circuit::{ControlSet, LookupTable, RegisterSpec, RotationCircuit, RotationGate};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, subset_butterfly, Strategy};
use crate::poly::Polynomial;

/// Masks tabulated per task; each task builds its own evaluator.
const TABULATE_CHUNK: usize = 1 << 12;

/// What to do when the target function has no finite value at a register
/// value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UndefinedPolicy {
    /// Fail the compilation.
    Reject,
    /// Tabulate angle 0 and exclude the input from error metrics.
    #[default]
    ZeroAndExclude,
}

impl FromStr for UndefinedPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reject" => Ok(UndefinedPolicy::Reject),
            "zero" | "zero-and-exclude" | "zero_and_exclude" => Ok(UndefinedPolicy::ZeroAndExclude),
            other => Err(Error::Expression {
                expr: other.to_string(),
                reason: "expected `reject` or `zero-and-exclude`".into(),
            }),
        }
    }
}

pub type CustomFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum FunctionKind {
    Arcsin,
    /// `2 arcsin(2^-n / x)` where `n` is the register size.
    ScaledArcsinReciprocal,
    Sin,
    Exp,
    Power(u32),
    Polynomial(Polynomial),
    /// Expression in the variable `x`.
    Expression { source: String, expr: meval::Expr },
    Custom { name: String, f: CustomFn },
}

impl fmt::Debug for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionKind::Expression { source, .. } => f.debug_tuple("Expression").field(source).finish(),
            FunctionKind::Custom { name, .. } => f.debug_tuple("Custom").field(name).finish(),
            FunctionKind::Polynomial(p) => f.debug_tuple("Polynomial").field(&p.coefficients()).finish(),
            FunctionKind::Power(d) => f.debug_tuple("Power").field(d).finish(),
            FunctionKind::Arcsin => f.write_str("Arcsin"),
            FunctionKind::ScaledArcsinReciprocal => f.write_str("ScaledArcsinReciprocal"),
            FunctionKind::Sin => f.write_str("Sin"),
            FunctionKind::Exp => f.write_str("Exp"),
        }
    }
}

/// Target function of a rotation, plus the handling of undefined points.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    pub kind: FunctionKind,
    pub policy: UndefinedPolicy,
}

/// Value of a function at one register input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample {
    Value(f64),
    Undefined,
}

impl FunctionSpec {
    pub fn new(kind: FunctionKind) -> Self {
        Self { kind, policy: UndefinedPolicy::default() }
    }

    pub fn arcsin() -> Self {
        Self::new(FunctionKind::Arcsin)
    }

    pub fn scaled_arcsin_reciprocal() -> Self {
        Self::new(FunctionKind::ScaledArcsinReciprocal)
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self::new(FunctionKind::Polynomial(p))
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(FunctionKind::Custom { name: name.into(), f: Arc::new(f) })
    }

    pub fn expression(source: &str) -> Result<Self> {
        let expr: meval::Expr = source.parse().map_err(|e: meval::Error| Error::Expression {
            expr: source.to_string(),
            reason: e.to_string(),
        })?;
        // reject unknown variables up front
        let _probe = expr.clone().bind("x").map_err(|e| Error::Expression {
            expr: source.to_string(),
            reason: e.to_string(),
        })?;
        Ok(Self::new(FunctionKind::Expression { source: source.to_string(), expr }))
    }

    pub fn with_policy(mut self, policy: UndefinedPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Canonical name, parseable by [`FunctionSpec::from_str`] except for
    /// custom callbacks.
    pub fn name(&self) -> String {
        match &self.kind {
            FunctionKind::Arcsin => "arcsin".into(),
            FunctionKind::ScaledArcsinReciprocal => "asin-recip".into(),
            FunctionKind::Sin => "sin".into(),
            FunctionKind::Exp => "exp".into(),
            FunctionKind::Power(d) => format!("pow:{d}"),
            FunctionKind::Polynomial(p) => {
                let coeffs: Vec<String> = p.coefficients().iter().map(|c| format!("{c:?}")).collect();
                format!("poly:{}", coeffs.join(","))
            }
            FunctionKind::Expression { source, .. } => format!("expr:{source}"),
            FunctionKind::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    /// Builds a single-threaded evaluator for an `n`-qubit register.
    pub fn evaluator(&self, n: usize) -> Box<dyn Fn(f64) -> Result<Sample> + '_> {
        let name = self.name();
        let domain = move |x: f64| Error::Domain { function: name.clone(), x };
        let finite = |v: f64| if v.is_finite() { Sample::Value(v) } else { Sample::Undefined };
        match &self.kind {
            FunctionKind::Arcsin => Box::new(move |x| {
                if x.abs() > 1.0 {
                    Err(domain(x))
                } else {
                    Ok(Sample::Value(x.asin()))
                }
            }),
            FunctionKind::ScaledArcsinReciprocal => {
                let scale = (-(n as f64)).exp2();
                Box::new(move |x| {
                    if x == 0.0 {
                        return Ok(Sample::Undefined);
                    }
                    let r = scale / x;
                    if r.abs() > 1.0 {
                        Err(domain(x))
                    } else {
                        Ok(Sample::Value(2.0 * r.asin()))
                    }
                })
            }
            FunctionKind::Sin => Box::new(move |x| Ok(finite(x.sin()))),
            FunctionKind::Exp => Box::new(move |x| Ok(finite(x.exp()))),
            FunctionKind::Power(d) => {
                let d = *d as i32;
                Box::new(move |x| Ok(finite(x.powi(d))))
            }
            FunctionKind::Polynomial(p) => Box::new(move |x| Ok(finite(p.eval(x)))),
            FunctionKind::Expression { expr, .. } => {
                let bound = expr.clone().bind("x").expect("variables checked at construction");
                Box::new(move |x| Ok(finite(bound(x))))
            }
            FunctionKind::Custom { f, .. } => Box::new(move |x| Ok(finite(f(x)))),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// Accepts `arcsin`, `asin-recip`, `sin`, `exp`, `pow:<d>`,
    /// `poly:<a0>,<a1>,...` and `expr:<expression in x>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Expression { expr: s.to_string(), reason: reason.to_string() };
        let kind = match s.trim() {
            "arcsin" | "asin" => FunctionKind::Arcsin,
            "asin-recip" | "scaled-arcsin-reciprocal" => FunctionKind::ScaledArcsinReciprocal,
            "sin" => FunctionKind::Sin,
            "exp" => FunctionKind::Exp,
            other => {
                if let Some(d) = other.strip_prefix("pow:") {
                    FunctionKind::Power(d.trim().parse().map_err(|_| bad("power must be a non-negative integer"))?)
                } else if let Some(list) = other.strip_prefix("poly:") {
                    let coeffs = list
                        .split(',')
                        .map(|c| c.trim().parse::<f64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("coefficients must be comma-separated reals"))?;
                    FunctionKind::Polynomial(Polynomial::new(coeffs)?)
                } else if let Some(e) = other.strip_prefix("expr:") {
                    return FunctionSpec::expression(e);
                } else {
                    return Err(bad("unknown function"));
                }
            }
        };
        Ok(FunctionSpec::new(kind))
    }
}

pub fn compile_lut(f: &FunctionSpec, register: &RegisterSpec) -> Result<LookupTable> {
    compile_lut_with(f, register, Strategy::default())
}

/// Tabulates `f(value_of(m))` for every basis input `m`.
pub fn compile_lut_with(f: &FunctionSpec, register: &RegisterSpec, strategy: Strategy) -> Result<LookupTable> {
    let size = register.size();
    let chunks = size.div_ceil(TABULATE_CHUNK);
    let tabulated = map_indexed(strategy, chunks, |c| {
        let eval = f.evaluator(register.n());
        let start = c * TABULATE_CHUNK;
        let end = (start + TABULATE_CHUNK).min(size);
        (start..end)
            .map(|m| eval(register.value_of(ControlSet::new(m as u32))))
            .collect::<Result<Vec<Sample>>>()
    });

    let mut angles = Vec::with_capacity(size);
    let mut excluded = Vec::new();
    for chunk in tabulated {
        for sample in chunk? {
            let mask = ControlSet::new(angles.len() as u32);
            match sample {
                Sample::Value(v) => angles.push(v),
                Sample::Undefined => {
                    let x = register.value_of(mask);
                    if f.policy == UndefinedPolicy::Reject {
                        return Err(Error::Undefined { function: f.name(), x, mask: mask.bits() });
                    }
                    warn!("{} is undefined at x = {x} (mask {mask}); tabulating 0 and excluding it", f.name());
                    excluded.push(mask);
                    angles.push(0.0);
                }
            }
        }
    }
    Ok(LookupTable { register: register.clone(), angles, excluded })
}

pub fn transform_lut(lut: &LookupTable) -> RotationCircuit {
    transform_lut_with(lut, Strategy::default())
}

/// Subset-firing circuit equivalent to `lut` on every basis input. All `2^n`
/// gates are returned, including zero-angle ones.
pub fn transform_lut_with(lut: &LookupTable, strategy: Strategy) -> RotationCircuit {
    let mut theta = lut.angles.clone();
    mobius_in_place(&mut theta, strategy);
    let gates = theta
        .into_iter()
        .enumerate()
        .map(|(m, t)| RotationGate::new(ControlSet::new(m as u32), t))
        .collect();
    RotationCircuit::from_sorted_unchecked(lut.register.clone(), gates)
}

/// `θ[s] = Σ_{t ⊆ s} (-1)^{|s|-|t|} a[t]`, in place.
pub fn mobius_in_place(table: &mut [f64], strategy: Strategy) {
    subset_butterfly(strategy, table, |hi, lo| *hi -= lo);
}
