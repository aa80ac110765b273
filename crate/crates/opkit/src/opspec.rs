//! Operator expressions for the command line.
//!
//! ```text
//! spec := leaf
//!       | adjoint(spec) | chain(spec, spec) | sum(spec, spec)
//!       | scale(real, spec) | vstack(spec, ...)
//! leaf := identity | diagonal | restriction | deriv1 | deriv2 | dft | broken-demo
//! ```
//!
//! Leaves are sized from the model length they receive: the outermost
//! expression acts on vectors of length `n`, `chain(a, b)` feeds `b`'s
//! output length to `a`, and `adjoint(x)` requires `x` to be square.

use opkit_core::ops::{Dft, Diagonal, FirstDerivative, Identity, Restriction, SecondDerivative};
use opkit_core::random::{complex_normal_vector, seeded, sorted_indices};
use opkit_core::{c64, OperatorExpr};
use rand_chacha::ChaCha8Rng;

use crate::demo::BrokenAdjoint;
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafName {
    Identity,
    Diagonal,
    Restriction,
    Deriv1,
    Deriv2,
    Dft,
    BrokenDemo,
}

impl LeafName {
    fn parse(word: &str) -> Option<Self> {
        Some(match word {
            "identity" => Self::Identity,
            "diagonal" => Self::Diagonal,
            "restriction" => Self::Restriction,
            "deriv1" => Self::Deriv1,
            "deriv2" => Self::Deriv2,
            "dft" => Self::Dft,
            "broken-demo" => Self::BrokenDemo,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OpSpec {
    Leaf(LeafName),
    Adjoint(Box<OpSpec>),
    Chain(Box<OpSpec>, Box<OpSpec>),
    Sum(Box<OpSpec>, Box<OpSpec>),
    Scale(f64, Box<OpSpec>),
    VStack(Vec<OpSpec>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(CliError::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.' | '+')))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn spec(&mut self) -> Result<OpSpec> {
        let start = self.pos;
        let word = self.word();
        if word.is_empty() {
            return self.error("expected an operator name");
        }
        if !self.eat('(') {
            return match LeafName::parse(word) {
                Some(leaf) => Ok(OpSpec::Leaf(leaf)),
                None => {
                    self.pos = start;
                    self.error(format!("unknown operator '{word}'"))
                }
            };
        }
        let spec = match word {
            "adjoint" => OpSpec::Adjoint(Box::new(self.spec()?)),
            "chain" | "sum" => {
                let a = self.spec()?;
                self.expect(',')?;
                let b = self.spec()?;
                if word == "chain" {
                    OpSpec::Chain(Box::new(a), Box::new(b))
                } else {
                    OpSpec::Sum(Box::new(a), Box::new(b))
                }
            }
            "scale" => {
                let num = self.word();
                let alpha: f64 = match num.parse() {
                    Ok(v) => v,
                    Err(_) => return self.error(format!("'{num}' is not a number")),
                };
                self.expect(',')?;
                OpSpec::Scale(alpha, Box::new(self.spec()?))
            }
            "vstack" => {
                let mut blocks = vec![self.spec()?];
                while self.eat(',') {
                    blocks.push(self.spec()?);
                }
                OpSpec::VStack(blocks)
            }
            _ => {
                self.pos = start;
                return self.error(format!("unknown combinator '{word}'"));
            }
        };
        self.expect(')')?;
        Ok(spec)
    }
}

pub fn parse(src: &str) -> Result<OpSpec> {
    let mut p = Parser { src, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.error("trailing input");
    }
    Ok(spec)
}

/// Parameters for turning a parsed expression into operators.
#[derive(Debug, Clone)]
pub struct BuildParams {
    /// Model length of the outermost expression.
    pub n: usize,
    pub dx: f64,
    /// Fraction of samples kept by `restriction`.
    pub fraction: f64,
    /// Seeds restriction indices and diagonal entries.
    pub indices_seed: u64,
}

impl Default for BuildParams {
    fn default() -> Self {
        Self {
            n: 64,
            dx: 1.0,
            fraction: 0.25,
            indices_seed: 0,
        }
    }
}

pub fn build(spec: &OpSpec, params: &BuildParams) -> Result<OperatorExpr> {
    if !(params.fraction > 0.0 && params.fraction <= 1.0) {
        return Err(CliError::Usage(format!(
            "fraction must lie in (0, 1], got {}",
            params.fraction
        )));
    }
    let mut rng = seeded(params.indices_seed);
    build_with(spec, params.n, params, &mut rng)
}

fn build_with(spec: &OpSpec, ncols: usize, params: &BuildParams, rng: &mut ChaCha8Rng) -> Result<OperatorExpr> {
    Ok(match spec {
        OpSpec::Leaf(leaf) => build_leaf(*leaf, ncols, params, rng)?,
        OpSpec::Adjoint(inner) => {
            let e = build_with(inner, ncols, params, rng)?;
            if e.nrows() != ncols {
                return Err(CliError::Usage(format!(
                    "adjoint({inner:?}) needs a square operator to act on length {ncols}, got shape {}",
                    e.shape()
                )));
            }
            e.h()
        }
        OpSpec::Chain(a, b) => {
            let right = build_with(b, ncols, params, rng)?;
            let left = build_with(a, right.nrows(), params, rng)?;
            OperatorExpr::compose(&left, &right)?
        }
        OpSpec::Sum(a, b) => {
            let a = build_with(a, ncols, params, rng)?;
            let b = build_with(b, ncols, params, rng)?;
            OperatorExpr::sum(&a, &b)?
        }
        OpSpec::Scale(alpha, inner) => OperatorExpr::scale(c64(*alpha, 0.0), &build_with(inner, ncols, params, rng)?),
        OpSpec::VStack(blocks) => {
            let built = blocks
                .iter()
                .map(|b| build_with(b, ncols, params, rng))
                .collect::<Result<Vec<_>>>()?;
            OperatorExpr::vstack(&built)?
        }
    })
}

fn build_leaf(leaf: LeafName, n: usize, params: &BuildParams, rng: &mut ChaCha8Rng) -> Result<OperatorExpr> {
    Ok(match leaf {
        LeafName::Identity => Identity::new(n)?.into(),
        LeafName::Diagonal => Diagonal::new(complex_normal_vector(rng, n).into_inner())?.into(),
        LeafName::Restriction => {
            let count = ((params.fraction * n as f64).floor() as usize).clamp(1, n);
            Restriction::new(n, sorted_indices(rng, n, count))?.into()
        }
        LeafName::Deriv1 => FirstDerivative::new(n, params.dx)?.into(),
        LeafName::Deriv2 => SecondDerivative::new(n, params.dx)?.into(),
        LeafName::Dft => Dft::new(n)?.into(),
        LeafName::BrokenDemo => BrokenAdjoint::new(n)?.into(),
    })
}
