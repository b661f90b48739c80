use std::collections::BTreeMap;
use std::fmt;

use crate::convolution::{BaseFunctor, ConvolutionBase, StructureMaps};
use crate::duality::{
    apply_functor_to_algebra, check_frobenius_algebra, check_triangles, tensor_left_functor, DualSituation, FrobeniusAlgebra,
    MonComonNatTransf, TransfComponents,
};
use crate::error::FrobError;
use crate::frob_tensor::pointwise_tensor;
use crate::functor::{compose_frobenius, from_strong, run_all_suites, Component, FrobFunctor, ObjectGrid};
use crate::linalg::{RatMatrix, Rational};
use crate::monoidal::{CategoryInstance, FiniteBase, MonObject};
use crate::report::Report;

use super::ast::{Arg, ArgValue, Call, Ident, ObjRef, Options, Override, Pos, Sort, Statement};
use super::SpecError;

/// Largest group order the fixture generators accept.
pub(crate) const MAX_GROUP_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ty {
    Matrix,
    Base,
    Algebra,
    /// A functor into `Mat(ℚ)` with structure maps.
    Functor,
    /// A functor out of a convolution base. Usable wherever a functor is
    /// expected when its base is `Σ G`.
    Rep,
    Dual,
    Transf,
}

impl Ty {
    fn accepts(self, actual: Ty) -> bool {
        self == actual || (self == Ty::Functor && actual == Ty::Rep)
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ty::Matrix => "a matrix",
            Ty::Base => "a base",
            Ty::Algebra => "a Frobenius algebra",
            Ty::Functor => "a functor",
            Ty::Rep => "a functor on a convolution base",
            Ty::Dual => "a dual situation",
            Ty::Transf => "a transformation",
        })
    }
}

#[derive(Debug, Clone)]
pub enum Value {
    Matrix(RatMatrix),
    Base(ConvolutionBase),
    Algebra(FrobeniusAlgebra),
    Functor(FrobFunctor),
    Rep(BaseFunctor),
    Dual(DualSituation),
    Transf(MonComonNatTransf),
}

impl Value {
    pub fn ty(&self) -> Ty {
        match self {
            Value::Matrix(_) => Ty::Matrix,
            Value::Base(_) => Ty::Base,
            Value::Algebra(_) => Ty::Algebra,
            Value::Functor(_) => Ty::Functor,
            Value::Rep(_) => Ty::Rep,
            Value::Dual(_) => Ty::Dual,
            Value::Transf(_) => Ty::Transf,
        }
    }

    /// The value as a functor into `Mat(ℚ)`.
    pub fn to_functor(&self) -> crate::Result<FrobFunctor> {
        match self {
            Value::Functor(f) => Ok(f.clone()),
            Value::Rep(r) => r.as_frob_functor(),
            other => Err(FrobError::InstanceMismatch(format!("{} is not a functor", other.ty()))),
        }
    }
}

/// Argument types of each `check` verb, and whether it takes `grid` and
/// `side` options.
pub(crate) fn verb_signature(verb: &str) -> Option<(&'static [Ty], bool, bool)> {
    const F: &[Ty] = &[Ty::Functor];
    Some(match verb {
        "triangles" => (&[Ty::Dual], false, false),
        "frobenius" | "monoidal" | "comonoidal" | "naturality" | "split" | "all" => (F, true, false),
        "frobalg" => (&[Ty::Algebra], false, false),
        "mate" => (&[Ty::Transf, Ty::Dual], true, true),
        "frobcat" => (&[Ty::Functor, Ty::Functor, Ty::Functor], true, false),
        "convolution" => (&[Ty::Rep], false, false),
        "transf" => (&[Ty::Transf], true, false),
        _ => return None,
    })
}

const RESERVED: [&str; 2] = ["grid", "side"];

struct Scope {
    types: BTreeMap<String, (Ty, Pos)>,
}

impl Scope {
    fn declare(&mut self, name: &Ident, ty: Ty) -> Result<(), SpecError> {
        if RESERVED.contains(&name.name.as_str()) {
            return Err(SpecError::at(name.pos, format!("`{}` is reserved", name.name)));
        }
        if let Some((_, prev)) = self.types.get(&name.name) {
            return Err(SpecError::at(
                name.pos,
                format!("`{}` is already defined on line {}", name.name, prev.line),
            ));
        }
        self.types.insert(name.name.clone(), (ty, name.pos));
        Ok(())
    }

    fn expect(&self, name: &str, pos: Pos, ty: Ty) -> Result<(), SpecError> {
        match self.types.get(name) {
            None => Err(SpecError::at(pos, format!("unknown name `{name}`"))),
            Some((actual, _)) if !ty.accepts(*actual) => {
                Err(SpecError::at(pos, format!("`{name}` is {actual}, expected {ty}")))
            }
            Some(_) => Ok(()),
        }
    }

    fn expect_ident(&self, id: &Ident, ty: Ty) -> Result<(), SpecError> {
        self.expect(&id.name, id.pos, ty)
    }
}

/// Resolves names, checks directive arguments, and builds the value of
/// every declaration.
pub(crate) fn bind(statements: &[Statement]) -> Result<BTreeMap<String, Value>, SpecError> {
    let mut scope = Scope { types: BTreeMap::new() };
    let mut values = BTreeMap::new();
    for s in statements {
        match s {
            Statement::Matrix { name, value } => {
                scope.declare(name, Ty::Matrix)?;
                values.insert(name.name.clone(), Value::Matrix(value.clone()));
            }
            Statement::Decl {
                sort,
                name,
                expr,
                overrides,
            } => {
                if RESERVED.contains(&name.name.as_str()) || scope.types.contains_key(&name.name) {
                    // reports the duplicate before doing any work
                    scope.declare(name, Ty::Matrix)?;
                }
                let value = Builder {
                    scope: &scope,
                    values: &values,
                }
                .decl(*sort, expr, overrides)?;
                scope.declare(name, value.ty())?;
                values.insert(name.name.clone(), value);
            }
            Statement::Check { verb, args, options } => {
                let Some((tys, grid_ok, side_ok)) = verb_signature(&verb.name) else {
                    return Err(SpecError::at(verb.pos, format!("unknown check `{}`", verb.name)));
                };
                if args.len() != tys.len() {
                    return Err(SpecError::at(
                        verb.pos,
                        format!(
                            "`check {}` takes {} argument(s), found {}",
                            verb.name,
                            tys.len(),
                            args.len()
                        ),
                    ));
                }
                for (a, ty) in args.iter().zip(tys) {
                    scope.expect_ident(a, *ty)?;
                }
                reject_options(options, grid_ok, side_ok, &verb.name)?;
            }
            Statement::Transport {
                dual,
                via,
                bind,
                options,
            } => {
                scope.expect_ident(dual, Ty::Dual)?;
                scope.expect_ident(via, Ty::Functor)?;
                reject_options(options, true, false, "transport")?;
                if let Some(x) = bind {
                    scope.declare(x, Ty::Dual)?;
                }
            }
            Statement::Tensor { left, right, bind } => {
                scope.expect_ident(left, Ty::Functor)?;
                scope.expect_ident(right, Ty::Functor)?;
                scope.declare(bind, Ty::Functor)?;
            }
            Statement::Compose { outer, inner, bind } => {
                scope.expect_ident(outer, Ty::Functor)?;
                scope.expect_ident(inner, Ty::Functor)?;
                scope.declare(bind, Ty::Functor)?;
            }
        }
    }
    Ok(values)
}

fn reject_options(options: &Options, grid_ok: bool, side_ok: bool, what: &str) -> Result<(), SpecError> {
    if let (Some(g), false) = (&options.grid, grid_ok) {
        return Err(SpecError::at(g.pos, format!("`{what}` does not take a grid")));
    }
    if let (Some((_, pos)), false) = (&options.side, side_ok) {
        return Err(SpecError::at(*pos, format!("`{what}` does not take a side")));
    }
    Ok(())
}

struct Builder<'a> {
    scope: &'a Scope,
    values: &'a BTreeMap<String, Value>,
}

fn lift<T>(pos: Pos, r: crate::Result<T>) -> Result<T, SpecError> {
    r.map_err(|e| SpecError::at(pos, e.to_string()))
}

/// Rejects a generated fixture whose own axiom check does not pass.
fn fixture_ok(pos: Pos, call: &Call, report: Report) -> Result<(), SpecError> {
    match report.entries.iter().find(|e| !e.is_pass()) {
        None => Ok(()),
        Some(e) => Err(SpecError::at(
            pos,
            format!("fixture `{call}` failed its axiom check: {} at {}", e.check, e.location),
        )),
    }
}

impl Builder<'_> {
    fn arity(&self, call: &Call, n: usize) -> Result<(), SpecError> {
        if call.args.len() == n {
            return Ok(());
        }
        Err(SpecError::at(
            call.head.pos,
            format!("`{}` takes {n} argument(s), found {}", call.head.name, call.args.len()),
        ))
    }

    fn rational(&self, arg: &Arg) -> Result<Rational, SpecError> {
        match &arg.value {
            ArgValue::Number(q) => Ok(q.clone()),
            _ => Err(SpecError::at(arg.pos, "expected a number")),
        }
    }

    fn natural(&self, arg: &Arg) -> Result<usize, SpecError> {
        let q = self.rational(arg)?;
        let n = (q.is_integer() && q.signum() >= 0)
            .then(|| q.numer().to_string().parse::<usize>().ok())
            .flatten();
        n.ok_or_else(|| SpecError::at(arg.pos, format!("expected a natural number, found {q}")))
    }

    fn group_order(&self, arg: &Arg) -> Result<usize, SpecError> {
        let n = self.natural(arg)?;
        if !(1..=MAX_GROUP_ORDER).contains(&n) {
            return Err(SpecError::at(
                arg.pos,
                format!("group order must be between 1 and {MAX_GROUP_ORDER}, found {n}"),
            ));
        }
        Ok(n)
    }

    fn named(&self, arg: &Arg, ty: Ty) -> Result<&Value, SpecError> {
        let ArgValue::Name(name) = &arg.value else {
            return Err(SpecError::at(arg.pos, format!("expected the name of {ty}")));
        };
        self.scope.expect(name, arg.pos, ty)?;
        self.values.get(name).ok_or_else(|| {
            SpecError::at(
                arg.pos,
                format!("`{name}` is built by a directive and cannot be used in a declaration"),
            )
        })
    }

    fn matrix(&self, arg: &Arg) -> Result<RatMatrix, SpecError> {
        match &arg.value {
            ArgValue::Matrix(m) => Ok(m.clone()),
            ArgValue::Name(_) => match self.named(arg, Ty::Matrix)? {
                Value::Matrix(m) => Ok(m.clone()),
                _ => unreachable!("type checked"),
            },
            ArgValue::Number(_) => Err(SpecError::at(arg.pos, "expected a matrix")),
        }
    }

    fn functor(&self, arg: &Arg) -> Result<FrobFunctor, SpecError> {
        let v = self.named(arg, Ty::Functor)?;
        lift(arg.pos, v.to_functor())
    }

    fn base(&self, arg: &Arg) -> Result<ConvolutionBase, SpecError> {
        match self.named(arg, Ty::Base)? {
            Value::Base(b) => Ok(b.clone()),
            _ => unreachable!("type checked"),
        }
    }

    fn sigma_base(&self, arg: &Arg) -> Result<FiniteBase, SpecError> {
        match self.base(arg)? {
            ConvolutionBase::Sigma(g) => Ok(g),
            ConvolutionBase::Discrete(_) => Err(SpecError::at(arg.pos, "expected a Sigma(G) base, found a discrete one")),
        }
    }

    fn decl(&self, sort: Sort, call: &Call, overrides: &[Override]) -> Result<Value, SpecError> {
        if matches!(sort, Sort::Base | Sort::Transf) {
            if let Some(o) = overrides.first() {
                return Err(SpecError::at(o.field.pos, format!("a {} has no fields to override", sort.keyword())));
            }
        }
        match sort {
            Sort::Base => self.base_decl(call),
            Sort::FrobAlg => self.algebra_decl(call, overrides),
            Sort::Functor => self.functor_decl(call, overrides),
            Sort::Dual => self.dual_decl(call, overrides),
            Sort::Transf => self.transf_decl(call),
        }
    }

    fn unknown(&self, call: &Call, sort: Sort, options: &str) -> SpecError {
        SpecError::at(
            call.head.pos,
            format!("unknown {} constructor `{}`; expected one of {options}", sort.keyword(), call.head.name),
        )
    }

    fn base_decl(&self, call: &Call) -> Result<Value, SpecError> {
        let pos = call.head.pos;
        match call.head.name.as_str() {
            "zmod" | "discrete" => {
                self.arity(call, 1)?;
                let g = lift(pos, FiniteBase::zmod(self.group_order(&call.args[0])?))?;
                Ok(Value::Base(if call.head.name == "zmod" {
                    ConvolutionBase::Sigma(g)
                } else {
                    ConvolutionBase::Discrete(g)
                }))
            }
            _ => Err(self.unknown(call, Sort::Base, "zmod, discrete")),
        }
    }

    fn algebra_decl(&self, call: &Call, overrides: &[Override]) -> Result<Value, SpecError> {
        let pos = call.head.pos;
        let alg = match call.head.name.as_str() {
            "zmod" => {
                self.arity(call, 1)?;
                let g = lift(pos, FiniteBase::zmod(self.group_order(&call.args[0])?))?;
                let alg = FrobeniusAlgebra::group_algebra(&g);
                fixture_ok(pos, call, check_frobenius_algebra(&alg))?;
                alg
            }
            "unit" => {
                self.arity(call, 0)?;
                let alg = FrobeniusAlgebra::unit();
                fixture_ok(pos, call, check_frobenius_algebra(&alg))?;
                alg
            }
            "algebra" => {
                self.arity(call, 5)?;
                let a = &call.args;
                let d = self.natural(&a[0])?;
                let m = [self.matrix(&a[1])?, self.matrix(&a[2])?, self.matrix(&a[3])?, self.matrix(&a[4])?];
                let [mu, eta, delta, eps] = m;
                lift(pos, FrobeniusAlgebra::new(d, mu, eta, delta, eps))?
            }
            "image" => {
                self.arity(call, 2)?;
                let f = self.functor(&call.args[0])?;
                let Value::Algebra(r) = self.named(&call.args[1], Ty::Algebra)? else {
                    unreachable!("type checked")
                };
                lift(pos, apply_functor_to_algebra(&f, r))?
            }
            _ => return Err(self.unknown(call, Sort::FrobAlg, "zmod, unit, algebra, image")),
        };
        let mut alg = alg;
        for o in overrides {
            let m = self.plain_field(o, &["mu", "eta", "delta", "eps"])?;
            alg = match o.field.name.as_str() {
                "mu" => alg.with_mu(m),
                "eta" => alg.with_eta(m),
                "delta" => alg.with_delta(m),
                _ => alg.with_eps(m),
            };
        }
        let checked = FrobeniusAlgebra::new(
            alg.dim(),
            alg.mu().clone(),
            alg.eta().clone(),
            alg.delta().clone(),
            alg.eps().clone(),
        );
        Ok(Value::Algebra(lift(overrides.first().map_or(pos, |o| o.value.pos), checked)?))
    }

    /// Value of an override that takes no object arguments.
    fn plain_field(&self, o: &Override, fields: &[&str]) -> Result<RatMatrix, SpecError> {
        if !fields.contains(&o.field.name.as_str()) {
            return Err(SpecError::at(
                o.field.pos,
                format!("unknown field `{}`; expected one of {}", o.field.name, fields.join(", ")),
            ));
        }
        if o.objects.is_some() {
            return Err(SpecError::at(o.field.pos, format!("field `{}` takes no objects", o.field.name)));
        }
        self.matrix(&o.value)
    }

    fn functor_decl(&self, call: &Call, overrides: &[Override]) -> Result<Value, SpecError> {
        let pos = call.head.pos;
        let a = &call.args;
        let value = match call.head.name.as_str() {
            "identity" => {
                self.arity(call, 0)?;
                Value::Functor(FrobFunctor::identity())
            }
            "unit" => {
                self.arity(call, 0)?;
                Value::Functor(lift(pos, FrobFunctor::unit(CategoryInstance::MatQ, CategoryInstance::MatQ))?)
            }
            "tensor_left" => {
                self.arity(call, 1)?;
                let Value::Algebra(alg) = self.named(&a[0], Ty::Algebra)? else {
                    unreachable!("type checked")
                };
                Value::Functor(lift(pos, tensor_left_functor(alg, &CategoryInstance::MatQ))?)
            }
            "compose" => {
                self.arity(call, 2)?;
                let (g, f) = (self.functor(&a[0])?, self.functor(&a[1])?);
                Value::Functor(lift(pos, compose_frobenius(&g, &f))?)
            }
            "tensor" => {
                self.arity(call, 2)?;
                let (f, g) = (self.functor(&a[0])?, self.functor(&a[1])?);
                Value::Functor(lift(pos, pointwise_tensor(&f, &g))?)
            }
            "strong" => {
                self.arity(call, 1)?;
                let f = self.functor(&a[0])?;
                let grid = lift(pos, ObjectGrid::for_source(f.source(), 1, 2))?;
                Value::Functor(lift(pos, from_strong(f, &grid))?)
            }
            "regular" => {
                self.arity(call, 1)?;
                let g = self.sigma_base(&a[0])?;
                let rep = lift(pos, BaseFunctor::regular(&g))?;
                let as_functor = lift(pos, rep.as_frob_functor())?;
                fixture_ok(pos, call, run_all_suites(&as_functor, &ObjectGrid::star()))?;
                Value::Rep(rep)
            }
            "trivial" => {
                self.arity(call, 2)?;
                let g = self.sigma_base(&a[0])?;
                Value::Rep(BaseFunctor::trivial(&g, self.natural(&a[1])?))
            }
            "constant" => {
                self.arity(call, 2)?;
                let ConvolutionBase::Discrete(g) = self.base(&a[0])? else {
                    return Err(SpecError::at(a[0].pos, "`constant` needs a discrete base"));
                };
                Value::Rep(BaseFunctor::constant(&g, self.natural(&a[1])?))
            }
            "rep" => {
                let Some(first) = a.first() else {
                    return Err(SpecError::at(pos, "`rep` takes a base followed by one matrix per group element"));
                };
                let g = self.sigma_base(first)?;
                self.arity(call, 1 + g.order())?;
                let rho = a[1..].iter().map(|m| self.matrix(m)).collect::<Result<Vec<_>, _>>()?;
                let dim = rho[0].rows();
                Value::Rep(lift(pos, BaseFunctor::new(&g, dim, rho))?)
            }
            _ => {
                return Err(self.unknown(
                    call,
                    Sort::Functor,
                    "identity, unit, tensor_left, compose, tensor, strong, regular, trivial, constant, rep",
                ))
            }
        };
        if overrides.is_empty() {
            return Ok(value);
        }
        match value {
            Value::Functor(f) => self.functor_overrides(f, overrides).map(Value::Functor),
            Value::Rep(r) => self.rep_overrides(r, overrides).map(Value::Rep),
            _ => unreachable!("functor constructors build functors"),
        }
    }

    fn functor_overrides(&self, mut f: FrobFunctor, overrides: &[Override]) -> Result<FrobFunctor, SpecError> {
        for o in overrides {
            let obj = |r: ObjRef| -> Result<MonObject, SpecError> {
                let x = match r {
                    ObjRef::Dim(d) => MonObject::Mat(d),
                    ObjRef::Star => MonObject::Star,
                };
                if !f.source().contains(&x) {
                    return Err(SpecError::at(o.field.pos, format!("object {x} is not in {}", f.source().name())));
                }
                Ok(x)
            };
            let field = o.field.name.as_str();
            let component = match (field, o.objects) {
                ("r", Some((a, b))) => Component::R(obj(a)?, obj(b)?),
                ("i", Some((a, b))) => Component::I(obj(a)?, obj(b)?),
                ("r0", None) => Component::R0,
                ("i0", None) => Component::I0,
                ("r" | "i", None) => {
                    return Err(SpecError::at(o.field.pos, format!("field `{field}` needs objects, as in `{field}(1,2)`")))
                }
                ("r0" | "i0", Some(_)) => {
                    return Err(SpecError::at(o.field.pos, format!("field `{field}` takes no objects")))
                }
                _ => {
                    return Err(SpecError::at(
                        o.field.pos,
                        format!("unknown field `{field}`; expected one of r, i, r0, i0"),
                    ))
                }
            };
            let m = self.matrix(&o.value)?;
            let expected = lift(o.field.pos, component_shape(&f, &component))?;
            if m.shape() != expected {
                return Err(SpecError::at(
                    o.value.pos,
                    format!(
                        "{component} must be {}x{}, found {}x{}",
                        expected.0,
                        expected.1,
                        m.rows(),
                        m.cols()
                    ),
                ));
            }
            f.set_component(component, m);
        }
        Ok(f)
    }

    fn rep_overrides(&self, r: BaseFunctor, overrides: &[Override]) -> Result<BaseFunctor, SpecError> {
        let mut given: BTreeMap<&str, RatMatrix> = BTreeMap::new();
        for o in overrides {
            let m = self.plain_field(o, &["r", "r0", "i", "i0"])?;
            given.insert(o.field.name.as_str(), m);
        }
        let pos = overrides[0].field.pos;
        let mut s = match r.structure() {
            Some(s) => s.clone(),
            None if given.len() == 4 => StructureMaps {
                r: RatMatrix::zeros(0, 0),
                r0: RatMatrix::zeros(0, 0),
                i: RatMatrix::zeros(0, 0),
                i0: RatMatrix::zeros(0, 0),
            },
            None => {
                return Err(SpecError::at(
                    pos,
                    "this functor has no structure maps; give all of r, r0, i, i0",
                ))
            }
        };
        for (k, m) in given {
            match k {
                "r" => s.r = m,
                "r0" => s.r0 = m,
                "i" => s.i = m,
                _ => s.i0 = m,
            }
        }
        lift(pos, r.with_structure(s))
    }

    fn dual_decl(&self, call: &Call, overrides: &[Override]) -> Result<Value, SpecError> {
        let pos = call.head.pos;
        let d = match call.head.name.as_str() {
            "cupcap" => {
                self.arity(call, 1)?;
                let d = DualSituation::cupcap(self.natural(&call.args[0])?);
                fixture_ok(pos, call, check_triangles(&d))?;
                d
            }
            "dual" => {
                self.arity(call, 4)?;
                let a = &call.args;
                let (da, db) = (self.natural(&a[0])?, self.natural(&a[1])?);
                let (e, n) = (self.matrix(&a[2])?, self.matrix(&a[3])?);
                lift(pos, DualSituation::new(MonObject::Mat(da), MonObject::Mat(db), e, n))?
            }
            _ => return Err(self.unknown(call, Sort::Dual, "cupcap, dual")),
        };
        let mut d = d;
        for o in overrides {
            let m = self.plain_field(o, &["e", "n"])?;
            d = if o.field.name == "e" { d.with_e(m) } else { d.with_n(m) };
        }
        let checked = DualSituation::new(d.a(), d.b(), d.e().clone(), d.n().clone());
        Ok(Value::Dual(lift(overrides.first().map_or(pos, |o| o.value.pos), checked)?))
    }

    fn transf_decl(&self, call: &Call) -> Result<Value, SpecError> {
        let pos = call.head.pos;
        let a = &call.args;
        let (source, target, components) = match call.head.name.as_str() {
            "identity" => {
                self.arity(call, 1)?;
                let f = self.functor(&a[0])?;
                return Ok(Value::Transf(MonComonNatTransf::identity(&f)));
            }
            "scaled" => {
                self.arity(call, 3)?;
                (self.functor(&a[0])?, self.functor(&a[1])?, TransfComponents::Scaled(self.rational(&a[2])?))
            }
            "left_factor" => {
                self.arity(call, 3)?;
                (self.functor(&a[0])?, self.functor(&a[1])?, TransfComponents::LeftFactor(self.matrix(&a[2])?))
            }
            "commutation" => {
                self.arity(call, 3)?;
                (self.functor(&a[0])?, self.functor(&a[1])?, TransfComponents::Commutation(self.natural(&a[2])?))
            }
            "braiding" => {
                self.arity(call, 2)?;
                (self.functor(&a[0])?, self.functor(&a[1])?, TransfComponents::Braiding)
            }
            _ => {
                return Err(self.unknown(
                    call,
                    Sort::Transf,
                    "identity, scaled, left_factor, commutation, braiding",
                ))
            }
        };
        Ok(Value::Transf(lift(pos, MonComonNatTransf::new(source, target, components))?))
    }
}

/// Shape `(rows, cols)` the object map dictates for a structure component.
fn component_shape(f: &FrobFunctor, c: &Component) -> crate::Result<(usize, usize)> {
    let src = f.source();
    Ok(match c {
        Component::R(a, b) => (f.dim_at(&src.tensor_obj(a, b)?)?, f.dim_at(a)? * f.dim_at(b)?),
        Component::I(a, b) => (f.dim_at(a)? * f.dim_at(b)?, f.dim_at(&src.tensor_obj(a, b)?)?),
        Component::R0 => (f.dim_at(&src.unit())?, 1),
        Component::I0 => (1, f.dim_at(&src.unit())?),
    })
}
