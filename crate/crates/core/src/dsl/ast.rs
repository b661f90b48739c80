//! Syntax tree of a spec file and its canonical text form.

use std::fmt;

use crate::duality::MateSide;
use crate::linalg::{RatMatrix, Rational};

/// A 1-based source position. Positions are diagnostic only: any two
/// compare equal, so a tree re-parsed from its serialization is equal to
/// the original.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pos: Pos::default(),
        }
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArgValue {
    Number(Rational),
    Name(String),
    Matrix(RatMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arg {
    pub value: ArgValue,
    pub pos: Pos,
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ArgValue::Number(q) => f.write_str(&q.to_compact_string()),
            ArgValue::Name(n) => f.write_str(n),
            ArgValue::Matrix(m) => f.write_str(&matrix_literal(m)),
        }
    }
}

/// `head` or `head(arg, …)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Call {
    pub head: Ident,
    pub args: Vec<Arg>,
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjRef {
    Dim(usize),
    Star,
}

impl fmt::Display for ObjRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjRef::Dim(d) => write!(f, "{d}"),
            ObjRef::Star => f.write_str("*"),
        }
    }
}

/// `field = value` or `field(A, B) = value` after `with`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Override {
    pub field: Ident,
    pub objects: Option<(ObjRef, ObjRef)>,
    pub value: Arg,
}

impl fmt::Display for Override {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field)?;
        if let Some((a, b)) = &self.objects {
            write!(f, "({a},{b})")?;
        }
        write!(f, " = {}", self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Base,
    FrobAlg,
    Functor,
    Dual,
    Transf,
}

impl Sort {
    pub fn keyword(&self) -> &'static str {
        match self {
            Sort::Base => "base",
            Sort::FrobAlg => "frobalg",
            Sort::Functor => "functor",
            Sort::Dual => "dual",
            Sort::Transf => "transf",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        [Sort::Base, Sort::FrobAlg, Sort::Functor, Sort::Dual, Sort::Transf]
            .into_iter()
            .find(|k| k.keyword() == s)
    }
}

/// `grid lo..hi`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub lo: usize,
    pub hi: usize,
    pub pos: Pos,
}

/// Trailing directive options, always printed in this order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub grid: Option<Grid>,
    pub side: Option<(MateSide, Pos)>,
}

impl fmt::Display for Options {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = &self.grid {
            write!(f, " grid {}..{}", g.lo, g.hi)?;
        }
        if let Some((s, _)) = &self.side {
            write!(f, " side {}", s.as_str())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    /// `matrix NAME RxC = [..]`
    Matrix { name: Ident, value: RatMatrix },
    /// `SORT NAME = call [with overrides]`
    Decl {
        sort: Sort,
        name: Ident,
        expr: Call,
        overrides: Vec<Override>,
    },
    /// `check VERB ARGS [grid lo..hi] [side left|right]`
    Check {
        verb: Ident,
        args: Vec<Ident>,
        options: Options,
    },
    /// `transport D via F [as X] [grid lo..hi]`
    Transport {
        dual: Ident,
        via: Ident,
        bind: Option<Ident>,
        options: Options,
    },
    /// `tensor F G as X`
    Tensor { left: Ident, right: Ident, bind: Ident },
    /// `compose G F as X`, meaning `G ∘ F`.
    Compose { outer: Ident, inner: Ident, bind: Ident },
}

impl Statement {
    pub fn pos(&self) -> Pos {
        match self {
            Statement::Matrix { name, .. } | Statement::Decl { name, .. } => name.pos,
            Statement::Check { verb, .. } => verb.pos,
            Statement::Transport { dual, .. } => dual.pos,
            Statement::Tensor { left, .. } => left.pos,
            Statement::Compose { outer, .. } => outer.pos,
        }
    }

    pub fn is_directive(&self) -> bool {
        !matches!(self, Statement::Matrix { .. } | Statement::Decl { .. })
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Matrix { name, value } => write!(
                f,
                "matrix {name} {}x{} = {}",
                value.rows(),
                value.cols(),
                matrix_literal(value)
            ),
            Statement::Decl {
                sort,
                name,
                expr,
                overrides,
            } => {
                write!(f, "{} {name} = {expr}", sort.keyword())?;
                if !overrides.is_empty() {
                    let items: Vec<String> = overrides.iter().map(ToString::to_string).collect();
                    write!(f, " with {}", items.join(", "))?;
                }
                Ok(())
            }
            Statement::Check { verb, args, options } => {
                write!(f, "check {verb}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, "{options}")
            }
            Statement::Transport {
                dual,
                via,
                bind,
                options,
            } => {
                write!(f, "transport {dual} via {via}")?;
                if let Some(x) = bind {
                    write!(f, " as {x}")?;
                }
                write!(f, "{options}")
            }
            Statement::Tensor { left, right, bind } => write!(f, "tensor {left} {right} as {bind}"),
            Statement::Compose { outer, inner, bind } => write!(f, "compose {outer} {inner} as {bind}"),
        }
    }
}

/// Row-major literal with `;` between rows: `[1 0; 0 -1/2]`.
pub fn matrix_literal(m: &RatMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(Rational::to_compact_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}
