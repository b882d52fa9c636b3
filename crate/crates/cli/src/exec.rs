//! Statement evaluation.
//!
//! Values over `QQ` and `GF(p)` live in separate variants; built-ins find
//! the field from their arguments (or the active ring) and run generically.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;
use sha2::{Digest, Sha256};

use torsionlab_core::field::Field;
use torsionlab_core::frobenius::{frobenius_functor, integral_closure_check, regularity_probe, restrict_scalars, tor_frobenius, verify_thm_3_5};
use torsionlab_core::homology::{free_resolution, koszul_depth, pd, tor, ProjectiveDimension};
use torsionlab_core::poly::expr::PolyExpr;
use torsionlab_core::poly::free::FreeElement;
use torsionlab_core::ring::ComputationCache;
use torsionlab_core::torsion::{koszul_syzygy_module, tau, torsion_split};
use torsionlab_core::verify::{carrier_check_maximal_ideal, check_prop_2_2, explore_question_2_12, verify_thm_2_10, verify_thm_2_8, Thm210Case};
use torsionlab_core::{
    Certificate, Error, FPModule, Ideal, Limits, ModuleElement, Polynomial, PrimeField, Rationals, Result, RingContext, RingFlags, Verdict,
};

use crate::cache::FileCache;
use crate::report::{ErrorInfo, RunReport, StatementReport, Status, Summary};
use crate::syntax::{parse_script, Arg, BinOp, Expr, FieldDecl, ModuleDef, Script, StatementKind};

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub degree_cap: u64,
    pub cache: Option<Arc<FileCache>>,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, degree_cap: Limits::default().degree_cap, cache: None }
    }
}

#[derive(Clone, Debug)]
pub enum Obj<K: Field> {
    Ring(RingContext<K>),
    Module(FPModule<K>),
    Elem(ModuleElement<K>),
    Ideal(Ideal<K>),
    Poly(RingContext<K>, Polynomial<K>),
}

#[derive(Clone, Debug)]
pub enum Value {
    Q(Obj<Rationals>),
    P(Obj<PrimeField>),
    Int(i64),
    Bool(bool),
    /// A polynomial expression not yet bound to a ring.
    Sym(PolyExpr),
    Tuple(Vec<Value>),
    List(Vec<Value>),
    Pd(ProjectiveDimension),
    Text(String),
    Cert(Box<Certificate>),
    Json(serde_json::Value),
}

pub trait Scalar: Field {
    fn wrap(o: Obj<Self>) -> Value;
    fn view(v: &Value) -> Option<&Obj<Self>>;
}

impl Scalar for Rationals {
    fn wrap(o: Obj<Self>) -> Value {
        Value::Q(o)
    }
    fn view(v: &Value) -> Option<&Obj<Self>> {
        match v {
            Value::Q(o) => Some(o),
            _ => None,
        }
    }
}

impl Scalar for PrimeField {
    fn wrap(o: Obj<Self>) -> Value {
        Value::P(o)
    }
    fn view(v: &Value) -> Option<&Obj<Self>> {
        match v {
            Value::P(o) => Some(o),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tag {
    Q,
    P,
}

fn tag_of(v: &Value) -> Option<Tag> {
    match v {
        Value::Q(_) => Some(Tag::Q),
        Value::P(_) => Some(Tag::P),
        Value::Tuple(xs) | Value::List(xs) => xs.iter().find_map(tag_of),
        _ => None,
    }
}

impl Value {
    fn type_name(&self) -> &'static str {
        fn obj<K: Field>(o: &Obj<K>) -> &'static str {
            match o {
                Obj::Ring(_) => "ring",
                Obj::Module(_) => "module",
                Obj::Elem(_) => "element",
                Obj::Ideal(_) => "ideal",
                Obj::Poly(..) => "polynomial",
            }
        }
        match self {
            Value::Q(o) => obj(o),
            Value::P(o) => obj(o),
            Value::Int(_) => "integer",
            Value::Bool(_) => "boolean",
            Value::Sym(_) => "polynomial",
            Value::Tuple(_) => "tuple",
            Value::List(_) => "list",
            Value::Pd(_) => "projective dimension",
            Value::Text(_) => "text",
            Value::Cert(_) => "certificate",
            Value::Json(_) => "report",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn obj<K: Field>(o: &Obj<K>) -> serde_json::Value {
            match o {
                Obj::Ring(r) => json!({"type": "ring", "text": r.descriptor()}),
                Obj::Module(m) => json!({
                    "type": "module",
                    "ring": m.ring().descriptor(),
                    "text": m.to_text(),
                    "degrees": m.generator_degrees(),
                }),
                Obj::Elem(e) => json!({"type": "element", "text": e.to_text()}),
                Obj::Ideal(i) => json!({"type": "ideal", "text": i.to_text()}),
                Obj::Poly(r, p) => json!({"type": "polynomial", "text": p.to_text(r.names())}),
            }
        }
        match self {
            Value::Q(o) => obj(o),
            Value::P(o) => obj(o),
            Value::Int(n) => json!(n),
            Value::Bool(b) => json!(b),
            Value::Sym(e) => json!({"type": "polynomial", "text": e.to_string()}),
            Value::Tuple(xs) | Value::List(xs) => serde_json::Value::Array(xs.iter().map(|x| x.to_json()).collect()),
            Value::Pd(p) => json!({"type": "pd", "value": p.to_string()}),
            Value::Text(s) => json!(s),
            Value::Cert(c) => serde_json::to_value(c).expect("certificates serialize"),
            Value::Json(v) => v.clone(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn obj<K: Field>(o: &Obj<K>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match o {
                Obj::Ring(r) => write!(f, "{}", r.descriptor()),
                Obj::Module(m) => write!(f, "{}", m.to_text()),
                Obj::Elem(e) => write!(f, "{}", e.to_text()),
                Obj::Ideal(i) => write!(f, "{}", i.to_text()),
                Obj::Poly(r, p) => write!(f, "{}", p.to_text(r.names())),
            }
        }
        let list = |f: &mut fmt::Formatter<'_>, xs: &[Value], open: &str, close: &str| {
            write!(f, "{open}")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "{close}")
        };
        match self {
            Value::Q(o) => obj(o, f),
            Value::P(o) => obj(o, f),
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Sym(e) => write!(f, "{e}"),
            Value::Tuple(xs) => list(f, xs, "(", ")"),
            Value::List(xs) => list(f, xs, "[", "]"),
            Value::Pd(p) => write!(f, "{p}"),
            Value::Text(s) => write!(f, "{s}"),
            Value::Cert(c) => {
                let v = match c.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "fail",
                    Verdict::Inapplicable => "inapplicable",
                };
                write!(f, "{} over {}: {v}", c.claim, c.ring)
            }
            Value::Json(v) => write!(f, "{v}"),
        }
    }
}

fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

fn mismatch<T>(what: &str, v: &Value) -> Result<T> {
    input(format!("type mismatch: expected {what}, found {}", v.type_name()))
}

/// Evaluated call arguments.
struct Args {
    positional: Vec<Value>,
    named: HashMap<String, Value>,
}

impl Args {
    /// The argument called `name`, else the positional one at `index`.
    fn get(&self, name: &str, index: usize) -> Option<&Value> {
        self.named.get(name).or_else(|| self.positional.get(index))
    }

    fn need(&self, name: &str, index: usize) -> Result<&Value> {
        self.get(name, index).ok_or_else(|| Error::Input(format!("missing argument `{name}`")))
    }

    fn all(&self) -> impl Iterator<Item = &Value> {
        self.positional.iter().chain(self.named.values())
    }
}

fn sym(v: &Value) -> Option<PolyExpr> {
    match v {
        Value::Sym(e) => Some(e.clone()),
        Value::Int(n) => Some(PolyExpr::int(*n)),
        _ => None,
    }
}

fn int_of(v: &Value) -> Result<i64> {
    match v {
        Value::Int(n) => Ok(*n),
        other => mismatch("an integer", other),
    }
}

fn small(v: &Value, what: &str) -> Result<usize> {
    let n = int_of(v)?;
    usize::try_from(n).map_err(|_| Error::Input(format!("{what} must be non-negative")))
}

fn exponent(v: &Value) -> Result<u32> {
    let n = int_of(v)?;
    u32::try_from(n).ok().filter(|&e| (1..=16).contains(&e)).ok_or_else(|| Error::Input("Frobenius exponent must be in 1..=16".into()))
}

fn poly_in<K: Scalar>(ring: &RingContext<K>, v: &Value) -> Result<Polynomial<K>> {
    if let Some(e) = sym(v) {
        return Ok(ring.reduce(&e.eval(ring.field(), ring.names())?));
    }
    match K::view(v) {
        Some(Obj::Poly(r, p)) if r == ring => Ok(p.clone()),
        Some(Obj::Poly(..)) => input("polynomial belongs to a different ring"),
        _ => mismatch("a polynomial", v),
    }
}

fn polys_in<K: Scalar>(ring: &RingContext<K>, v: &Value) -> Result<Vec<Polynomial<K>>> {
    match v {
        Value::Tuple(xs) | Value::List(xs) => xs.iter().map(|x| poly_in(ring, x)).collect(),
        _ => match K::view(v) {
            Some(Obj::Ideal(i)) => Ok(i.generators().to_vec()),
            _ => Ok(vec![poly_in(ring, v)?]),
        },
    }
}

fn ideal_in<K: Scalar>(ring: &RingContext<K>, v: &Value) -> Result<Ideal<K>> {
    match K::view(v) {
        Some(Obj::Ideal(i)) if i.ring() == ring => Ok(i.clone()),
        Some(Obj::Ideal(_)) => input("ideal belongs to a different ring"),
        Some(Obj::Module(_)) => input("type mismatch: expected an ideal, found module"),
        _ => ring.ideal(polys_in(ring, v)?),
    }
}

fn module_of<K: Scalar>(v: &Value) -> Result<FPModule<K>> {
    match K::view(v) {
        Some(Obj::Module(m)) => Ok(m.clone()),
        Some(Obj::Ideal(_)) => input("type mismatch: expected a module, found ideal"),
        _ => mismatch("a module", v),
    }
}

fn ring_of<K: Scalar>(v: &Value) -> Option<RingContext<K>> {
    match K::view(v)? {
        Obj::Ring(r) => Some(r.clone()),
        Obj::Module(m) => Some(m.ring().clone()),
        Obj::Elem(e) => Some(e.module.ring().clone()),
        Obj::Ideal(i) => Some(i.ring().clone()),
        Obj::Poly(r, _) => Some(r.clone()),
    }
}

/// An element of `m` from a linear form in the coordinates `e1..em`.
fn element_in<K: Scalar>(m: &FPModule<K>, v: &Value) -> Result<ModuleElement<K>> {
    if let Some(Obj::Elem(e)) = K::view(v) {
        if e.module.presentation() != m.presentation() {
            return input("element belongs to a different module");
        }
        return Ok(e.clone());
    }
    let Some(e) = sym(v) else { return mismatch("a module element", v) };
    let ring = m.ring();
    let (n, k) = (ring.nvars(), m.num_generators());
    let mut names = ring.names().to_vec();
    names.extend((1..=k).map(|i| format!("e{i}")));
    let p = e.eval(ring.field(), &names)?;
    let mut comps = vec![Polynomial::zero(ring.field(), n); k];
    for (mono, c) in p.terms() {
        let ex = mono.exponents();
        let hits: Vec<usize> = (0..k).filter(|&i| ex[n + i] > 0).collect();
        if hits.len() != 1 || ex[n + hits[0]] != 1 {
            return input(format!("`{e}` is not linear in the generators e1..e{k}"));
        }
        let base = torsionlab_core::poly::monomial::Monomial::from_exponents(&ex[..n]);
        let t = Polynomial::term(ring.field(), base, c.clone());
        comps[hits[0]] = &comps[hits[0]] + &t;
    }
    let comps = comps.into_iter().map(|c| ring.reduce(&c)).collect();
    ModuleElement::new(m, FreeElement::from_components(comps))
}

fn elements_in<K: Scalar>(m: &FPModule<K>, v: &Value) -> Result<Vec<ModuleElement<K>>> {
    match v {
        Value::List(xs) | Value::Tuple(xs) => xs.iter().map(|x| element_in(m, x)).collect(),
        _ => Ok(vec![element_in(m, v)?]),
    }
}

fn minimal<K: Field>(m: &FPModule<K>) -> Result<FPModule<K>> {
    Ok(m.minimal_presentation()?.module.clone())
}

fn module_key<K: Field>(m: &FPModule<K>) -> Result<(String, Vec<i64>)> {
    let mm = minimal(m)?;
    Ok((mm.to_text(), mm.generator_degrees().to_vec()))
}

pub struct Executor {
    config: Config,
    env: HashMap<String, Value>,
    failed: HashSet<String>,
    active: Option<Value>,
}

impl Executor {
    pub fn new(config: Config) -> Self {
        Executor { config, env: HashMap::new(), failed: HashSet::new(), active: None }
    }

    fn limits(&self) -> Limits {
        Limits { degree_cap: self.config.degree_cap, cancel: None }
    }

    fn cache(&self) -> Option<Arc<dyn ComputationCache>> {
        self.config.cache.clone().map(|c| c as Arc<dyn ComputationCache>)
    }

    fn active_ring<K: Scalar>(&self) -> Result<RingContext<K>> {
        self.active.as_ref().and_then(ring_of::<K>).ok_or_else(|| Error::Input("no ring over this field is active".into()))
    }

    fn active_tag(&self) -> Option<Tag> {
        self.active.as_ref().and_then(tag_of)
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        match e {
            Expr::Int(n) => i64::try_from(*n).map(Value::Int).map_err(|_| Error::Input(format!("integer {n} is out of range"))),
            Expr::Bool(b) => Ok(Value::Bool(*b)),
            Expr::Ident(s) => {
                if let Some(v) = self.env.get(s) {
                    return Ok(v.clone());
                }
                if self.failed.contains(s) {
                    return input(format!("`{s}` is unavailable because its definition failed"));
                }
                Ok(Value::Sym(PolyExpr::Var(s.clone())))
            }
            Expr::Neg(x) => self.negate(self.eval(x)?),
            Expr::Bin(op, l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                match op {
                    BinOp::Eq => Ok(Value::Bool(self.equal(&a, &b)?)),
                    BinOp::Ne => Ok(Value::Bool(!self.equal(&a, &b)?)),
                    _ => self.arith(*op, a, b),
                }
            }
            Expr::Pow(b, n) => match self.eval(b)? {
                Value::Int(k) => k.checked_pow(*n).map(Value::Int).ok_or_else(|| Error::Input("integer overflow".into())),
                v => match sym(&v) {
                    Some(s) => Ok(Value::Sym(PolyExpr::Pow(Box::new(s), *n))),
                    None => self.dispatch(&[v.clone()], |ex| ex.pow_obj::<Rationals>(&v, *n), |ex| ex.pow_obj::<PrimeField>(&v, *n)),
                },
            },
            Expr::Call(name, args) => {
                let mut positional = Vec::new();
                let mut named = HashMap::new();
                for Arg { name, value } in args {
                    let v = self.eval(value)?;
                    match name {
                        Some(n) => {
                            named.insert(n.clone(), v);
                        }
                        None => positional.push(v),
                    }
                }
                self.call(name, &Args { positional, named })
            }
            Expr::Tuple(xs) => Ok(Value::Tuple(xs.iter().map(|x| self.eval(x)).collect::<Result<_>>()?)),
            Expr::List(xs) => Ok(Value::List(xs.iter().map(|x| self.eval(x)).collect::<Result<_>>()?)),
        }
    }

    fn dispatch<T>(
        &self,
        vals: &[Value],
        q: impl FnOnce(&Self) -> Result<T>,
        p: impl FnOnce(&Self) -> Result<T>,
    ) -> Result<T> {
        match vals.iter().find_map(tag_of).or_else(|| self.active_tag()) {
            Some(Tag::Q) => q(self),
            Some(Tag::P) => p(self),
            None => input("no ring is active"),
        }
    }

    fn negate(&self, v: Value) -> Result<Value> {
        match v {
            Value::Int(n) => Ok(Value::Int(-n)),
            Value::Sym(s) => Ok(Value::Sym(PolyExpr::Sum(vec![(true, s)]))),
            other => self.arith(BinOp::Mul, Value::Int(-1), other),
        }
    }

    fn arith(&self, op: BinOp, a: Value, b: Value) -> Result<Value> {
        if let (Value::Int(x), Value::Int(y)) = (&a, &b) {
            let r = match op {
                BinOp::Add => x.checked_add(*y),
                BinOp::Sub => x.checked_sub(*y),
                BinOp::Mul => x.checked_mul(*y),
                _ => None,
            };
            if let Some(r) = r {
                return Ok(Value::Int(r));
            }
        }
        if let (Some(x), Some(y)) = (sym(&a), sym(&b)) {
            return Ok(Value::Sym(match op {
                BinOp::Add => PolyExpr::Sum(vec![(false, x), (false, y)]),
                BinOp::Sub => PolyExpr::Sum(vec![(false, x), (true, y)]),
                BinOp::Mul => PolyExpr::Product(vec![x, y]),
                BinOp::Div => match b {
                    Value::Int(0) => return input("division by zero"),
                    Value::Int(d) => PolyExpr::Product(vec![x, PolyExpr::Number { numer: BigInt::one(), denom: BigInt::from(d) }]),
                    _ => return input("only division by an integer is supported"),
                },
                BinOp::Eq | BinOp::Ne => unreachable!("comparisons are handled by the caller"),
            }));
        }
        let vals = [a.clone(), b.clone()];
        self.dispatch(&vals, |ex| ex.arith_obj::<Rationals>(op, &a, &b), |ex| ex.arith_obj::<PrimeField>(op, &a, &b))
    }

    fn arith_obj<K: Scalar>(&self, op: BinOp, a: &Value, b: &Value) -> Result<Value> {
        let ring = ring_of::<K>(a).or_else(|| ring_of::<K>(b)).map(Ok).unwrap_or_else(|| self.active_ring::<K>())?;
        let elem = |v: &Value| match K::view(v) {
            Some(Obj::Elem(e)) => Some(e.clone()),
            _ => None,
        };
        match (elem(a), elem(b), op) {
            (Some(x), Some(y), BinOp::Add) => Ok(K::wrap(Obj::Elem(x.add(&y)))),
            (Some(x), Some(y), BinOp::Sub) => Ok(K::wrap(Obj::Elem(x.sub(&y)))),
            (None, Some(y), BinOp::Mul) => Ok(K::wrap(Obj::Elem(y.scale(&poly_in(&ring, a)?)))),
            (Some(x), None, BinOp::Mul) => Ok(K::wrap(Obj::Elem(x.scale(&poly_in(&ring, b)?)))),
            (None, None, _) => {
                let (x, y) = (poly_in(&ring, a)?, poly_in(&ring, b)?);
                let p = match op {
                    BinOp::Add => &x + &y,
                    BinOp::Sub => &x - &y,
                    BinOp::Mul => &x * &y,
                    _ => return input("unsupported polynomial operation"),
                };
                Ok(K::wrap(Obj::Poly(ring.clone(), ring.reduce(&p))))
            }
            _ => input(format!("cannot apply `{op:?}` to {} and {}", a.type_name(), b.type_name())),
        }
    }

    fn pow_obj<K: Scalar>(&self, v: &Value, n: u32) -> Result<Value> {
        match K::view(v) {
            Some(Obj::Poly(r, p)) => Ok(K::wrap(Obj::Poly(r.clone(), r.reduce(&p.pow(n))))),
            _ => mismatch("a polynomial", v),
        }
    }

    fn equal(&self, a: &Value, b: &Value) -> Result<bool> {
        match (a, b) {
            (Value::Int(x), Value::Int(y)) => return Ok(x == y),
            (Value::Bool(x), Value::Bool(y)) => return Ok(x == y),
            (Value::Text(x), Value::Text(y)) => return Ok(x == y),
            (Value::Pd(p), Value::Int(n)) | (Value::Int(n), Value::Pd(p)) => {
                return Ok(*p == ProjectiveDimension::Finite(usize::try_from(*n).unwrap_or(usize::MAX)))
            }
            (Value::Pd(p), Value::Sym(PolyExpr::Var(s))) | (Value::Sym(PolyExpr::Var(s)), Value::Pd(p)) if s == "infinite" => {
                return Ok(!p.is_finite())
            }
            (Value::Pd(p), Value::Pd(q)) => return Ok(p.is_finite() == q.is_finite() && (!p.is_finite() || p == q)),
            _ => {}
        }
        self.dispatch(&[a.clone(), b.clone()], |ex| ex.equal_obj::<Rationals>(a, b), |ex| ex.equal_obj::<PrimeField>(a, b))
    }

    fn equal_obj<K: Scalar>(&self, a: &Value, b: &Value) -> Result<bool> {
        let ring = ring_of::<K>(a).or_else(|| ring_of::<K>(b)).map(Ok).unwrap_or_else(|| self.active_ring::<K>())?;
        match (K::view(a), K::view(b)) {
            (Some(Obj::Module(x)), Some(Obj::Module(y))) => {
                Ok(x.ring() == y.ring() && module_key(x)? == module_key(y)?)
            }
            (Some(Obj::Elem(x)), Some(Obj::Elem(y))) => x.equals(y),
            (Some(Obj::Ring(x)), Some(Obj::Ring(y))) => Ok(x == y),
            (Some(Obj::Ideal(x)), _) => x.equals(&ideal_in(&ring, b)?),
            (_, Some(Obj::Ideal(y))) => y.equals(&ideal_in(&ring, a)?),
            (Some(Obj::Elem(x)), None) => x.equals(&element_in(&x.module, b)?),
            (None, Some(Obj::Elem(y))) => y.equals(&element_in(&y.module, a)?),
            _ => {
                let d = &poly_in(&ring, a)? - &poly_in(&ring, b)?;
                Ok(ring.is_zero(&d))
            }
        }
    }

    fn call(&self, name: &str, args: &Args) -> Result<Value> {
        let vals: Vec<Value> = args.all().cloned().collect();
        self.dispatch(&vals, |ex| ex.builtin::<Rationals>(name, args), |ex| ex.builtin::<PrimeField>(name, args))
    }

    fn ring_arg<K: Scalar>(&self, args: &Args) -> Result<RingContext<K>> {
        match args.named.get("over") {
            Some(v) => ring_of::<K>(v).ok_or_else(|| Error::Input("`over` needs a ring".into())),
            None => args.all().find_map(ring_of::<K>).map(Ok).unwrap_or_else(|| self.active_ring::<K>()),
        }
    }

    fn builtin<K: Scalar>(&self, name: &str, args: &Args) -> Result<Value> {
        let m = |i: usize| -> Result<FPModule<K>> { module_of::<K>(args.need("module", i)?) };
        let module = |v: FPModule<K>| Ok(K::wrap(Obj::Module(v)));
        match name {
            "tensor" => module(m(0)?.tensor(&module_of::<K>(args.need("other", 1)?)?)?),
            "tensor_power" => module(m(0)?.tensor_power(small(args.need("n", 1)?, "the exponent")?)?),
            "minimal" => module(minimal(&m(0)?)?),
            "nu" => Ok(Value::Int(m(0)?.nu()? as i64)),
            "is_free" => Ok(Value::Bool(m(0)?.is_free()?)),
            "is_zero" => match K::view(args.need("value", 0)?) {
                Some(Obj::Elem(e)) => Ok(Value::Bool(e.is_zero()?)),
                Some(Obj::Ideal(i)) => Ok(Value::Bool(i.is_zero())),
                _ => Ok(Value::Bool(m(0)?.is_zero()?)),
            },
            "torsion" => module(minimal(&torsion_split(&m(0)?)?.torsion)?),
            "tf" => module(minimal(&torsion_split(&m(0)?)?.torsion_free)?),
            "torsion_free" => Ok(Value::Bool(torsion_split(&m(0)?)?.is_torsion_free)),
            "is_torsion" => Ok(Value::Bool(torsion_split(&m(0)?)?.is_torsion)),
            "gens" => Ok(Value::List(m(0)?.generators().into_iter().map(|g| K::wrap(Obj::Elem(g))).collect())),
            "element" => {
                let mm = m(0)?;
                Ok(K::wrap(Obj::Elem(element_in(&mm, args.need("value", 1)?)?)))
            }
            "tau" => {
                let mm = m(0)?;
                let elems = match args.get("elements", 1) {
                    Some(v) => elements_in(&mm, v)?,
                    None => mm.generators(),
                };
                Ok(K::wrap(Obj::Elem(tau(&mm, &elems)?.1)))
            }
            "ann" => match K::view(args.need("value", 0)?) {
                Some(Obj::Elem(e)) => Ok(K::wrap(Obj::Ideal(e.module.annihilator(Some(e))?))),
                _ => Ok(K::wrap(Obj::Ideal(m(0)?.annihilator(None)?))),
            },
            "presentation_ideal" => Ok(K::wrap(Obj::Ideal(m(0)?.presentation_ideal()?.0))),
            "rank" => match m(0)?.rank()?.rank {
                Some(r) => Ok(Value::Int(r as i64)),
                None => Ok(Value::Text("none".into())),
            },
            "hilbert" => Ok(Value::Int(m(0)?.hilbert_function(int_of(args.need("degree", 1)?)?)? as i64)),
            "betti" | "resolve" => {
                let mm = m(0)?;
                let bound = match args.get("length", 1) {
                    Some(v) => small(v, "the length")?,
                    None => mm.ring().nvars() + 1,
                };
                let res = free_resolution(&mm, bound)?;
                if name == "betti" {
                    Ok(Value::List(res.betti_numbers().into_iter().map(|b| Value::Int(b as i64)).collect()))
                } else {
                    Ok(Value::Text(res.betti_table().render()))
                }
            }
            "pd" => Ok(Value::Pd(pd(&m(0)?)?)),
            "tor" => {
                let i = small(args.need("i", 2)?, "the homological index")?;
                module(tor(&m(0)?, &module_of::<K>(args.need("other", 1)?)?, i)?)
            }
            "depth" => {
                if args.positional.len() >= 2 || args.named.contains_key("ideal") {
                    let mm = module_of::<K>(args.need("module", 1)?)?;
                    let j = ideal_in(mm.ring(), args.need("ideal", 0)?)?;
                    Ok(Value::Int(koszul_depth(j.generators(), &mm)?.depth as i64))
                } else {
                    let mm = m(0)?;
                    let vars = mm.ring().variables();
                    Ok(Value::Int(koszul_depth(&vars, &mm)?.depth as i64))
                }
            }
            "residue_field" => module(FPModule::residue_field(&self.ring_arg::<K>(args)?)),
            "quotient" => {
                let mm = m(0)?;
                let j = ideal_in(mm.ring(), args.need("ideal", 1)?)?;
                module(mm.quotient_by_ideal(&j)?)
            }
            "ideal" => {
                let ring = self.ring_arg::<K>(args)?;
                let gens = args.positional.iter().map(|v| polys_in(&ring, v)).collect::<Result<Vec<_>>>()?;
                Ok(K::wrap(Obj::Ideal(ring.ideal(gens.concat())?)))
            }
            "contains" => {
                let ring = self.ring_arg::<K>(args)?;
                let j = ideal_in(&ring, args.need("ideal", 0)?)?;
                Ok(Value::Bool(j.contains(&poly_in(&ring, args.need("value", 1)?)?)?))
            }
            "F" | "frobenius" => module(frobenius_functor(&m(0)?, exponent(args.need("e", 1)?)?)?),
            "restrict" => module(minimal(&restrict_scalars(&m(0)?, exponent(args.need("e", 1)?)?)?.module)?),
            "torF" | "tor_frobenius" => {
                let e = exponent(args.need("e", 1)?)?;
                let i = small(args.need("i", 2)?, "the homological index")?;
                module(tor_frobenius(&m(0)?, e, i)?)
            }
            "regular_sequence" => {
                let ring = self.ring_arg::<K>(args)?;
                let seq_arg = args.named.get("sequence").or_else(|| args.positional.iter().rev().find(|v| ring_of::<K>(v).is_none()));
                let seq = polys_in(&ring, seq_arg.ok_or_else(|| Error::Input("missing argument `sequence`".into()))?)?;
                Ok(Value::Bool(ring.is_regular_sequence(&seq)?))
            }
            "koszul" => {
                let ring = self.ring_arg::<K>(args)?;
                let seq_arg = args.named.get("sequence").or_else(|| args.positional.iter().rev().find(|v| ring_of::<K>(v).is_none()));
                let seq = polys_in(&ring, seq_arg.ok_or_else(|| Error::Input("missing argument `sequence`".into()))?)?;
                module(koszul_syzygy_module(&ring, &seq)?.module)
            }
            "explore" => {
                let ring = self.ring_arg::<K>(args)?;
                let panel = args.named.get("panel").map(|v| small(v, "panel")).transpose()?.unwrap_or(4);
                let cap = args.named.get("cap").map(|v| small(v, "cap")).transpose()?.unwrap_or(3);
                let report = explore_question_2_12(&ring, panel, self.config.seed, cap)?;
                Ok(Value::Json(serde_json::to_value(report).expect("reports serialize")))
            }
            _ => input(format!("unknown function `{name}`")),
        }
    }

    fn verify<K: Scalar>(&self, claim: &str, args: &Args) -> Result<Certificate> {
        let m = |i: usize| -> Result<FPModule<K>> { module_of::<K>(args.need("module", i)?) };
        match claim {
            "thm2.8" => {
                let ring = self.ring_arg::<K>(args)?;
                let seq_arg = args.named.get("sequence").or_else(|| args.positional.iter().rev().find(|v| ring_of::<K>(v).is_none()));
                let seq = polys_in(&ring, seq_arg.ok_or_else(|| Error::Input("missing argument `sequence`".into()))?)?;
                verify_thm_2_8(&ring, &seq)
            }
            "prop2.2" => {
                let mm = m(0)?;
                let elems = elements_in(&mm, args.need("elements", 1)?)?;
                let coeffs = polys_in(mm.ring(), args.need("coefficients", 2)?)?;
                check_prop_2_2(&mm, &elems, &coeffs)
            }
            "thm2.10" => {
                let mm = m(0)?;
                let nn = match args.named.get("with").or(args.positional.get(1)) {
                    Some(v) => module_of::<K>(v)?,
                    None => mm.clone(),
                };
                let case = match args.named.get("case").map(int_of).transpose()?.unwrap_or(1) {
                    1 => Thm210Case::PresentationIdeal,
                    2 => Thm210Case::Rank,
                    c => return input(format!("case must be 1 or 2, not {c}")),
                };
                verify_thm_2_10(&mm, &nn, case)
            }
            "carrier" => carrier_check_maximal_ideal(&m(0)?),
            "thm3.5" => {
                let e = args.get("e", 1).map(exponent).transpose()?.unwrap_or(1);
                verify_thm_3_5(&m(0)?, e)
            }
            "thm3.2" => {
                let rbar = module_of::<K>(args.need("closure", 0)?)?;
                let mm = module_of::<K>(args.need("module", 1)?)?;
                let unit = args.named.get("unit").map(|v| small(v, "unit")).transpose()?.unwrap_or(0);
                integral_closure_check(&rbar, unit, &mm)
            }
            _ => input(format!("unknown claim `{claim}`")),
        }
    }

    fn probe<K: Scalar>(&self, what: &str, args: &Args) -> Result<Certificate> {
        match what {
            "regularity" => {
                // optional leading ring: `probe regularity R M`
                let skip = usize::from(matches!(args.positional.first(), Some(Value::Q(Obj::Ring(_)) | Value::P(Obj::Ring(_)))));
                let mm = module_of::<K>(args.need("module", skip)?)?;
                let e = args.get("e", skip + 1).map(exponent).transpose()?.unwrap_or(1);
                let e2 = args.get("e2", skip + 2).map(exponent).transpose()?.unwrap_or(2);
                regularity_probe(&mm, e, e2)
            }
            _ => input(format!("unknown probe `{what}`")),
        }
    }

    fn command_args(&self, args: &[Arg]) -> Result<Args> {
        let mut out = Args { positional: Vec::new(), named: HashMap::new() };
        for a in args {
            let v = self.eval(&a.value)?;
            match &a.name {
                Some(n) => {
                    out.named.insert(n.clone(), v);
                }
                None => out.positional.push(v),
            }
        }
        Ok(out)
    }

    fn define_ring<K: Scalar>(&self, field: K, d: &crate::syntax::RingDecl) -> Result<Value> {
        let eval = |e: &Expr| -> Result<Polynomial<K>> {
            let v = self.eval(e)?;
            let s = sym(&v).ok_or_else(|| Error::Input(format!("type mismatch: expected a polynomial, found {}", v.type_name())))?;
            s.eval(field, &d.vars)
        };
        let ideal: Vec<Polynomial<K>> = d.ideal.iter().map(eval).collect::<Result<_>>()?;
        let mut primes: Vec<Vec<Polynomial<K>>> = match &d.minimal_primes {
            Some(ps) => ps.iter().map(|p| p.iter().map(eval).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?,
            None => Vec::new(),
        };
        if d.domain {
            match primes.len() {
                0 if !ideal.is_empty() => primes.push(ideal.clone()),
                0 | 1 => {}
                _ => return input("a domain has a single minimal prime"),
            }
        }
        let weights = match &d.degrees {
            Some(ws) => Some(
                ws.iter()
                    .map(|&w| u32::try_from(w).map_err(|_| Error::Input("variable degree is too large".into())))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let flags = RingFlags { reduced: d.reduced || d.domain, complete_intersection: d.ci };
        let ring = RingContext::new(field, d.vars.clone(), ideal, weights, primes, flags, self.limits())?.with_cache(self.cache());
        Ok(K::wrap(Obj::Ring(ring)))
    }

    fn define_module<K: Scalar>(&self, ring: RingContext<K>, d: &crate::syntax::ModuleDecl) -> Result<Value> {
        let m = match &d.def {
            ModuleDef::Coker(rows) => {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|e| poly_in(&ring, &self.eval(e)?)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                match &d.degrees {
                    Some(ds) => FPModule::coker_with_degrees(&ring, rows, ds.clone())?,
                    None => FPModule::coker(&ring, rows)?,
                }
            }
            ModuleDef::Free(n) => {
                let n = usize::try_from(*n).map_err(|_| Error::Input("rank is too large".into()))?;
                let degrees = d.degrees.clone().unwrap_or_else(|| vec![0; n]);
                if degrees.len() != n {
                    return input(format!("free module of rank {n} needs {n} degrees"));
                }
                FPModule::free(&ring, degrees)?
            }
            ModuleDef::Ideal(gens) => {
                if d.degrees.is_some() {
                    return input("an ideal module takes its degrees from its generators");
                }
                let gens = gens.iter().map(|e| poly_in(&ring, &self.eval(e)?)).collect::<Result<Vec<_>>>()?;
                FPModule::free_rank(&ring, 1).ideal_times(&ring.ideal(gens)?)?.0
            }
        };
        Ok(K::wrap(Obj::Module(m)))
    }

    /// Runs one statement; returns its status and value.
    fn statement(&mut self, kind: &StatementKind) -> Result<(Status, Option<Value>)> {
        match kind {
            StatementKind::Ring(d) => {
                let v = match d.field {
                    FieldDecl::Rationals => self.define_ring(Rationals, d)?,
                    FieldDecl::Prime(p) => {
                        let p = u32::try_from(p).map_err(|_| Error::Input(format!("GF({p}): characteristic is too large")))?;
                        self.define_ring(PrimeField::new(p)?, d)?
                    }
                };
                self.env.insert(d.name.clone(), v.clone());
                self.active = Some(v.clone());
                Ok((Status::Ok, Some(v)))
            }
            StatementKind::Module(d) => {
                let ring_v = self.env.get(&d.ring).cloned().ok_or_else(|| Error::Input(format!("ring `{}` is unavailable", d.ring)))?;
                let v = match &ring_v {
                    Value::Q(Obj::Ring(r)) => self.define_module(r.clone(), d)?,
                    Value::P(Obj::Ring(r)) => self.define_module(r.clone(), d)?,
                    other => return mismatch("a ring", other),
                };
                self.active = Some(ring_v);
                self.env.insert(d.name.clone(), v.clone());
                Ok((Status::Ok, Some(v)))
            }
            StatementKind::Let(name, e) => {
                let v = self.eval(e)?;
                self.env.insert(name.clone(), v.clone());
                Ok((Status::Ok, Some(v)))
            }
            StatementKind::Print(e) => Ok((Status::Ok, Some(self.eval(e)?))),
            StatementKind::Assert(e) => match self.eval(e)? {
                Value::Bool(b) => Ok((if b { Status::Pass } else { Status::Fail }, Some(Value::Bool(b)))),
                other => mismatch("a boolean", &other),
            },
            StatementKind::Verify(claim, args) | StatementKind::Probe(claim, args) => {
                let a = self.command_args(args)?;
                let vals: Vec<Value> = a.all().cloned().collect();
                let is_verify = matches!(kind, StatementKind::Verify(..));
                let cert = self.dispatch(
                    &vals,
                    |ex| if is_verify { ex.verify::<Rationals>(claim, &a) } else { ex.probe::<Rationals>(claim, &a) },
                    |ex| if is_verify { ex.verify::<PrimeField>(claim, &a) } else { ex.probe::<PrimeField>(claim, &a) },
                )?;
                let status = match cert.verdict {
                    Verdict::Pass => Status::Pass,
                    Verdict::Fail => Status::Fail,
                    Verdict::Inapplicable => Status::Inapplicable,
                };
                Ok((status, Some(Value::Cert(Box::new(cert)))))
            }
        }
    }

    pub fn run(&mut self, script: &Script) -> (Vec<StatementReport>, Vec<u64>) {
        let mut reports = Vec::new();
        let mut times = Vec::new();
        for (index, st) in script.statements.iter().enumerate() {
            let start = Instant::now();
            let outcome = self.statement(&st.kind);
            times.push(start.elapsed().as_micros() as u64);
            let defined = match &st.kind {
                StatementKind::Ring(d) => Some(d.name.clone()),
                StatementKind::Module(d) => Some(d.name.clone()),
                StatementKind::Let(n, _) => Some(n.clone()),
                _ => None,
            };
            let mut r = StatementReport {
                index,
                line: st.pos.line,
                column: st.pos.column,
                kind: st.kind.keyword().to_string(),
                source: st.kind.to_string(),
                status: Status::Ok,
                value: None,
                certificate: None,
                error: None,
            };
            match outcome {
                Ok((status, value)) => {
                    r.status = status;
                    match value {
                        Some(Value::Cert(c)) => r.certificate = Some(*c),
                        Some(v) => r.value = Some(v.to_json()),
                        None => {}
                    }
                }
                Err(e) => {
                    if let Some(n) = defined {
                        self.env.remove(&n);
                        self.failed.insert(n);
                    }
                    r.status = Status::Error;
                    r.error = Some(ErrorInfo::from(&e));
                }
            }
            reports.push(r);
        }
        (reports, times)
    }
}

pub fn input_hash(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// Parses and runs a script.
pub fn execute_text(text: &str, config: &Config) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(input_hash(text), config);
    match parse_script(text) {
        Err(e) => {
            report.parse_error = Some(ErrorInfo::from(&e));
        }
        Ok(script) => {
            let mut ex = Executor::new(config.clone());
            let (statements, times) = ex.run(&script);
            report.statements = statements;
            report.timing.statements_us = times;
        }
    }
    report.summary = Summary::of(&report.statements);
    report.exit_code = report.compute_exit_code();
    report.timing.total_us = start.elapsed().as_micros() as u64;
    report.timing.cache = config.cache.as_ref().map(|c| c.stats());
    report
}

/// Runs an already parsed script.
pub fn execute(script: &Script, config: &Config) -> RunReport {
    let text = script.to_string();
    let start = Instant::now();
    let mut report = RunReport::new(input_hash(&text), config);
    let mut ex = Executor::new(config.clone());
    let (statements, times) = ex.run(script);
    report.statements = statements;
    report.timing.statements_us = times;
    report.summary = Summary::of(&report.statements);
    report.exit_code = report.compute_exit_code();
    report.timing.total_us = start.elapsed().as_micros() as u64;
    report.timing.cache = config.cache.as_ref().map(|c| c.stats());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> RunReport {
        execute_text(src, &Config::default())
    }

    #[test]
    fn empty_script() {
        let r = run("");
        assert!(r.statements.is_empty());
        assert_eq!(r.exit_code, 0);
    }

    #[test]
    fn node_tensor_powers_stay_torsion_free() {
        let r = run("ring R = GF(5)[x,y] / (x*y) with minimal_primes [(x),(y)] reduced;\n\
                     module M = coker [[x]] over R;\n\
                     assert torsion_free(tensor_power(M, 3));\n\
                     assert minimal(tensor_power(M, 4)) == M;");
        assert_eq!(r.exit_code, 0, "{}", r.to_json());
    }

    #[test]
    fn koszul_square_has_torsion() {
        let r = run("ring R = QQ[x,y];\nmodule M = coker [[x],[y]] over R;\nassert torsion_free(tensor_power(M,2));");
        assert_eq!(r.statements[2].status, Status::Fail);
        assert_eq!(r.exit_code, 1);
    }

    #[test]
    fn errors_do_not_abort() {
        let r = run("ring R = QQ[x];\nlet T = tensor_power(R, 2);\nprint 1 + 2;\nprint T;");
        assert_eq!(r.statements[1].status, Status::Error);
        assert_eq!(r.statements[2].value, Some(json!(3)));
        assert_eq!(r.statements[3].status, Status::Error);
        assert_eq!(r.exit_code, 3);
    }

    #[test]
    fn elements_and_tau() {
        let r = run("ring R = QQ[x,y];\nmodule M = coker [[x],[y]] over R;\n\
                     let t = tau(M, [e1, e2]);\nassert ann(t) == (x, y);\n\
                     assert is_zero(ann(element(M, x*e1)));\nassert pd(M) == 1;\nassert pd(residue_field(R)) == 2;");
        assert_eq!(r.exit_code, 0, "{}", r.to_json());
    }

    #[test]
    fn verify_statements() {
        let r = run("ring R = QQ[x,y];\nverify thm2.8 R (x,y);\nring S = QQ[x,y] / (x*y) with minimal_primes [(x),(y)] reduced;\n\
                     module N = coker [[x]] over S;\nverify thm2.10 N case=1;");
        assert_eq!(r.statements[1].status, Status::Pass, "{}", r.to_json());
        assert_eq!(r.statements[4].status, Status::Inapplicable, "{}", r.to_json());
        assert_eq!(r.exit_code, 2);
    }
}
