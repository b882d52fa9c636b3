//! Lexer, parser and pretty printer for `.tl` scripts.
//!
//! ```text
//! ring R = GF(5)[x,y] / (x*y) with minimal_primes [(x),(y)] reduced ci;
//! module M = coker [[x]] over R;
//! let T = tensor_power(M, 3);
//! assert torsion_free(T);
//! verify thm2.8 R (x,y);
//! ```
//!
//! Identifiers are checked while parsing: every name must be a ring
//! variable, a previously defined name, a module coordinate `e1, e2, ...`
//! or the keyword `infinite`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use torsionlab_core::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const PUNCT: [&str; 16] = ["==", "!=", ";", ",", "(", ")", "[", "]", "=", "+", "-", "*", "/", "^", "{", "}"];

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| Error::Parse { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            // dotted suffixes such as `thm2.8`
            while i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Ident(s), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<u64>().map_err(|_| err(line, col, format!("integer literal `{s}` is too large")))?;
            col += i - start;
            out.push((Tok::Int(n), pos));
            continue;
        }
        let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        match PUNCT.iter().find(|p| rest.starts_with(**p)) {
            Some(p) => {
                i += p.len();
                col += p.len();
                out.push((Tok::Punct(p), pos));
            }
            None => return Err(err(line, col, format!("unexpected character `{c}`"))),
        }
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Eq,
    Ne,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Eq | BinOp::Ne => 1,
            BinOp::Add | BinOp::Sub => 2,
            BinOp::Mul | BinOp::Div => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Bool(bool),
    Ident(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(String, Vec<Arg>),
    /// Parenthesised list with at least two entries, or `()`.
    Tuple(Vec<Expr>),
    List(Vec<Expr>),
}

/// A call or command argument; `over R` is stored with name `over`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub name: Option<String>,
    pub value: Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDecl {
    Rationals,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub field: FieldDecl,
    pub vars: Vec<String>,
    pub ideal: Vec<Expr>,
    pub minimal_primes: Option<Vec<Vec<Expr>>>,
    pub reduced: bool,
    pub ci: bool,
    pub domain: bool,
    pub degrees: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDef {
    Coker(Vec<Vec<Expr>>),
    Free(u64),
    /// The ideal `(f1, ..., fk)` as a submodule of `R`.
    Ideal(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub def: ModuleDef,
    pub ring: String,
    pub degrees: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Ring(RingDecl),
    Module(ModuleDecl),
    Let(String, Expr),
    Print(Expr),
    Assert(Expr),
    Verify(String, Vec<Arg>),
    Probe(String, Vec<Arg>),
}

impl StatementKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            StatementKind::Ring(_) => "ring",
            StatementKind::Module(_) => "module",
            StatementKind::Let(..) => "let",
            StatementKind::Print(_) => "print",
            StatementKind::Assert(_) => "assert",
            StatementKind::Verify(..) => "verify",
            StatementKind::Probe(..) => "probe",
        }
    }
}

/// A statement with its source position. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct Statement {
    pub kind: StatementKind,
    pub pos: Pos,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ring,
    Module,
    Value,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    names: HashMap<String, Kind>,
    ring_vars: HashSet<String>,
}

type PResult<T> = Result<T, Error>;

pub fn parse_script(text: &str) -> PResult<Script> {
    let mut p = Parser { toks: lex(text)?, at: 0, names: HashMap::new(), ring_vars: HashSet::new() };
    let mut statements = Vec::new();
    while p.peek() != &Tok::Eof {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

fn is_coordinate(s: &str) -> bool {
    s.len() > 1 && s.starts_with('e') && s[1..].bytes().all(|b| b.is_ascii_digit()) && !s[1..].starts_with('0')
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error_at<T>(&self, pos: Pos, message: String) -> PResult<T> {
        Err(Error::Parse { line: pos.line, column: pos.column, message })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        self.error_at(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn eat(&mut self, p: &str) -> bool {
        if matches!(self.peek(), Tok::Punct(q) if *q == p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> PResult<()> {
        if self.eat(p) {
            Ok(())
        } else {
            self.unexpected(&format!("`{p}`"))
        }
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }

    fn eat_keyword(&mut self, k: &str) -> bool {
        if self.is_keyword(k) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(what),
        }
    }

    fn int(&mut self, what: &str) -> PResult<u64> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected(what),
        }
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let neg = self.eat("-");
        let pos = self.pos();
        let n = self.int("an integer")?;
        match i64::try_from(n) {
            Ok(v) => Ok(if neg { -v } else { v }),
            Err(_) => self.error_at(pos, format!("integer `{n}` is out of range")),
        }
    }

    fn define(&mut self, name: &str, kind: Kind, pos: Pos) -> PResult<()> {
        if self.ring_vars.contains(name) {
            return self.error_at(pos, format!("`{name}` is already a ring variable"));
        }
        self.names.insert(name.to_string(), kind);
        Ok(())
    }

    fn statement(&mut self) -> PResult<Statement> {
        let pos = self.pos();
        let head = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.unexpected("a statement"),
        };
        let kind = match head.as_str() {
            "ring" => {
                self.bump();
                StatementKind::Ring(self.ring_decl()?)
            }
            "module" => {
                self.bump();
                StatementKind::Module(self.module_decl()?)
            }
            "let" => {
                self.bump();
                self.binding()?
            }
            "print" => {
                self.bump();
                StatementKind::Print(self.expr()?)
            }
            "assert" => {
                self.bump();
                StatementKind::Assert(self.expr()?)
            }
            "verify" => {
                self.bump();
                let claim = self.ident("a claim name")?;
                StatementKind::Verify(claim, self.command_args()?)
            }
            "probe" => {
                self.bump();
                let what = self.ident("a probe name")?;
                StatementKind::Probe(what, self.command_args()?)
            }
            _ if self.peek2() == &Tok::Punct("=") => self.binding()?,
            _ => return self.unexpected("a statement"),
        };
        self.expect(";")?;
        Ok(Statement { kind, pos })
    }

    fn binding(&mut self) -> PResult<StatementKind> {
        let pos = self.pos();
        let name = self.ident("a name")?;
        self.expect("=")?;
        let value = self.expr()?;
        self.define(&name, Kind::Value, pos)?;
        Ok(StatementKind::Let(name, value))
    }

    fn ring_decl(&mut self) -> PResult<RingDecl> {
        let pos = self.pos();
        let name = self.ident("a ring name")?;
        if self.names.contains_key(&name) || self.ring_vars.contains(&name) {
            return self.error_at(pos, format!("`{name}` is already defined"));
        }
        self.expect("=")?;
        let field = match self.ident("`QQ` or `GF(p)`")?.as_str() {
            "QQ" => FieldDecl::Rationals,
            "GF" => {
                self.expect("(")?;
                let p = self.int("a prime")?;
                self.expect(")")?;
                FieldDecl::Prime(p)
            }
            other => return self.error_at(pos, format!("unknown coefficient field `{other}`")),
        };
        self.expect("[")?;
        let mut vars = Vec::new();
        if !self.eat("]") {
            loop {
                let vpos = self.pos();
                let v = self.ident("a variable name")?;
                if vars.contains(&v) {
                    return self.error_at(vpos, format!("variable `{v}` is repeated"));
                }
                if matches!(self.names.get(&v), Some(_)) {
                    return self.error_at(vpos, format!("`{v}` is already defined"));
                }
                vars.push(v);
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        for v in &vars {
            self.ring_vars.insert(v.clone());
        }
        let ideal = if self.eat("/") { self.paren_list()? } else { Vec::new() };
        let mut decl = RingDecl {
            name: name.clone(),
            field,
            vars,
            ideal,
            minimal_primes: None,
            reduced: false,
            ci: false,
            domain: false,
            degrees: None,
        };
        self.eat_keyword("with");
        loop {
            if self.eat_keyword("minimal_primes") {
                self.expect("[")?;
                let mut primes = Vec::new();
                if !self.eat("]") {
                    loop {
                        primes.push(self.paren_list()?);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                decl.minimal_primes = Some(primes);
            } else if self.eat_keyword("reduced") {
                decl.reduced = true;
            } else if self.eat_keyword("ci") {
                decl.ci = true;
            } else if self.eat_keyword("domain") {
                decl.domain = true;
            } else if self.eat_keyword("degrees") {
                let ds = self.int_list()?;
                let mut out = Vec::new();
                for d in ds {
                    if d <= 0 {
                        return self.error_at(pos, "variable degrees must be positive".into());
                    }
                    out.push(d as u64);
                }
                decl.degrees = Some(out);
            } else {
                break;
            }
        }
        if decl.vars.contains(&name) {
            return self.error_at(pos, format!("ring `{name}` shadows one of its variables"));
        }
        self.names.insert(name, Kind::Ring);
        Ok(decl)
    }

    fn int_list(&mut self) -> PResult<Vec<i64>> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.signed_int()?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    /// `(e1, ..., ek)`; a single parenthesised expression is a one-element list.
    fn paren_list(&mut self) -> PResult<Vec<Expr>> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(")") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn module_decl(&mut self) -> PResult<ModuleDecl> {
        let pos = self.pos();
        let name = self.ident("a module name")?;
        self.expect("=")?;
        let def = if self.eat_keyword("coker") {
            ModuleDef::Coker(self.matrix()?)
        } else if self.eat_keyword("free") {
            ModuleDef::Free(self.int("a rank")?)
        } else if self.eat_keyword("ideal") {
            ModuleDef::Ideal(self.paren_list()?)
        } else {
            return self.unexpected("`coker`, `free` or `ideal`");
        };
        if !self.eat_keyword("over") {
            return self.unexpected("`over`");
        }
        let rpos = self.pos();
        let ring = self.ident("a ring name")?;
        match self.names.get(&ring) {
            Some(Kind::Ring) => {}
            Some(Kind::Module) => return self.error_at(rpos, format!("type mismatch: `{ring}` is a module, not a ring")),
            Some(Kind::Value) => return self.error_at(rpos, format!("type mismatch: `{ring}` is not a ring")),
            None => return self.error_at(rpos, format!("undefined ring `{ring}`")),
        }
        let degrees = if self.eat_keyword("degrees") { Some(self.int_list()?) } else { None };
        if self.names.contains_key(&name) {
            return self.error_at(pos, format!("`{name}` is already defined"));
        }
        self.define(&name, Kind::Module, pos)?;
        Ok(ModuleDecl { name, def, ring, degrees })
    }

    /// `[[a, b], [c, d]]`, rows of equal length.
    fn matrix(&mut self) -> PResult<Vec<Vec<Expr>>> {
        self.expect("[")?;
        let mut rows: Vec<Vec<Expr>> = Vec::new();
        loop {
            let rpos = self.pos();
            self.expect("[")?;
            let mut row = Vec::new();
            if !self.eat("]") {
                loop {
                    row.push(self.expr()?);
                    if self.eat("]") {
                        break;
                    }
                    if !self.eat(",") {
                        return self.unexpected("`,` or `]`");
                    }
                }
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return self.error_at(rpos, format!("row has {} entries, expected {}", row.len(), first.len()));
                }
            }
            rows.push(row);
            if self.eat("]") {
                return Ok(rows);
            }
            if !self.eat(",") {
                return self.unexpected("`,` or `]`");
            }
        }
    }

    fn command_args(&mut self) -> PResult<Vec<Arg>> {
        let mut args = Vec::new();
        while self.peek() != &Tok::Punct(";") && self.peek() != &Tok::Eof {
            if self.eat_keyword("over") {
                args.push(Arg { name: Some("over".into()), value: self.expr()? });
            } else if self.eat_keyword("with") {
                let name = self.ident("an argument name")?;
                args.push(Arg { name: Some(name), value: self.expr()? });
            } else {
                args.push(self.arg()?);
            }
            self.eat(",");
        }
        Ok(args)
    }

    fn arg(&mut self) -> PResult<Arg> {
        if let (Tok::Ident(name), Tok::Punct("=")) = (self.peek().clone(), self.peek2().clone()) {
            self.bump();
            self.bump();
            return Ok(Arg { name: Some(name), value: self.expr()? });
        }
        Ok(Arg { name: None, value: self.expr()? })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let lhs = self.sum()?;
        let op = if self.eat("==") {
            BinOp::Eq
        } else if self.eat("!=") {
            BinOp::Ne
        } else {
            return Ok(lhs);
        };
        let rhs = self.sum()?;
        Ok(Expr::Bin(op, Box::new(lhs), Box::new(rhs)))
    }

    fn sum(&mut self) -> PResult<Expr> {
        let mut lhs = self.product()?;
        loop {
            let op = if self.eat("+") {
                BinOp::Add
            } else if self.eat("-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat("*") {
                BinOp::Mul
            } else if self.eat("/") {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat("^") {
            let pos = self.pos();
            let n = self.int("an exponent")?;
            return match u32::try_from(n) {
                Ok(k) => Ok(Expr::Pow(Box::new(base), k)),
                Err(_) => self.error_at(pos, format!("exponent `{n}` is too large")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => {
                self.bump();
                // a call needs `(` right after the name; `R (x,y)` is two arguments
                let glued = self.pos().line == pos.line && self.pos().column == pos.column + s.len();
                if glued && self.eat("(") {
                    let mut args = Vec::new();
                    if !self.eat(")") {
                        loop {
                            args.push(self.arg()?);
                            if self.eat(")") {
                                break;
                            }
                            if !self.eat(",") {
                                return self.unexpected("`,` or `)`");
                            }
                        }
                    }
                    return Ok(Expr::Call(s, args));
                }
                match s.as_str() {
                    "true" => return Ok(Expr::Bool(true)),
                    "false" => return Ok(Expr::Bool(false)),
                    _ => {}
                }
                if self.names.contains_key(&s) || self.ring_vars.contains(&s) || is_coordinate(&s) || s == "infinite" {
                    Ok(Expr::Ident(s))
                } else {
                    self.error_at(pos, format!("undefined identifier `{s}`"))
                }
            }
            Tok::Punct("(") => {
                self.bump();
                if self.eat(")") {
                    return Ok(Expr::Tuple(Vec::new()));
                }
                let first = self.expr()?;
                if self.eat(")") {
                    return Ok(first);
                }
                let mut items = vec![first];
                while self.eat(",") {
                    items.push(self.expr()?);
                }
                self.expect(")")?;
                Ok(Expr::Tuple(items))
            }
            Tok::Punct("[") => {
                self.bump();
                let mut items = Vec::new();
                if !self.eat("]") {
                    loop {
                        items.push(self.expr()?);
                        if self.eat("]") {
                            break;
                        }
                        if !self.eat(",") {
                            return self.unexpected("`,` or `]`");
                        }
                    }
                }
                Ok(Expr::List(items))
            }
            _ => self.unexpected("an expression"),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

struct Prec<'a>(&'a Expr, u8);

impl fmt::Display for Prec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Prec(e, min) = *self;
        let own = match e {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Neg(_) => 4,
            Expr::Pow(..) => 5,
            _ => 6,
        };
        if own < min {
            return write!(f, "({})", Prec(e, 0));
        }
        match e {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Bool(b) => write!(f, "{b}"),
            Expr::Ident(s) => write!(f, "{s}"),
            Expr::Neg(x) => write!(f, "-{}", Prec(x, 4)),
            Expr::Bin(op, l, r) => {
                let p = op.precedence();
                // comparisons do not chain
                let lp = if p == 1 { 2 } else { p };
                write!(f, "{} {} {}", Prec(l, lp), op.symbol(), Prec(r, p + 1))
            }
            Expr::Pow(b, n) => write!(f, "{}^{n}", Prec(b, 6)),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Tuple(items) => {
                write!(f, "(")?;
                write_list(f, items)?;
                write!(f, ")")
            }
            Expr::List(items) => {
                write!(f, "[")?;
                write_list(f, items)?;
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Prec(self, 0).fmt(f)
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}={}", self.value),
            None => write!(f, "{}", self.value),
        }
    }
}

fn write_paren(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    write!(f, "(")?;
    write_list(f, items)?;
    write!(f, ")")
}

fn write_command_args(f: &mut fmt::Formatter<'_>, args: &[Arg]) -> fmt::Result {
    for a in args {
        match &a.name {
            Some(n) if n == "over" => write!(f, " over {}", a.value)?,
            Some(n) => write!(f, " with {n} {}", a.value)?,
            None => write!(f, " {}", a.value)?,
        }
    }
    Ok(())
}

impl fmt::Display for StatementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatementKind::Ring(r) => {
                let field = match r.field {
                    FieldDecl::Rationals => "QQ".to_string(),
                    FieldDecl::Prime(p) => format!("GF({p})"),
                };
                write!(f, "ring {} = {field}[{}]", r.name, r.vars.join(", "))?;
                if !r.ideal.is_empty() {
                    write!(f, " / ")?;
                    write_paren(f, &r.ideal)?;
                }
                let mut opts = Vec::new();
                if let Some(ps) = &r.minimal_primes {
                    let ps: Vec<String> = ps
                        .iter()
                        .map(|p| format!("({})", p.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
                        .collect();
                    opts.push(format!("minimal_primes [{}]", ps.join(", ")));
                }
                for (on, word) in [(r.reduced, "reduced"), (r.ci, "ci"), (r.domain, "domain")] {
                    if on {
                        opts.push(word.to_string());
                    }
                }
                if let Some(d) = &r.degrees {
                    opts.push(format!("degrees [{}]", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
                }
                if !opts.is_empty() {
                    write!(f, " with {}", opts.join(" "))?;
                }
                Ok(())
            }
            StatementKind::Module(m) => {
                write!(f, "module {} = ", m.name)?;
                match &m.def {
                    ModuleDef::Coker(rows) => {
                        write!(f, "coker [")?;
                        for (i, row) in rows.iter().enumerate() {
                            if i > 0 {
                                write!(f, ", ")?;
                            }
                            write!(f, "[")?;
                            write_list(f, row)?;
                            write!(f, "]")?;
                        }
                        write!(f, "]")?;
                    }
                    ModuleDef::Free(n) => write!(f, "free {n}")?,
                    ModuleDef::Ideal(gens) => {
                        write!(f, "ideal ")?;
                        write_paren(f, gens)?;
                    }
                }
                write!(f, " over {}", m.ring)?;
                if let Some(d) = &m.degrees {
                    write!(f, " degrees [{}]", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))?;
                }
                Ok(())
            }
            StatementKind::Let(n, e) => write!(f, "let {n} = {e}"),
            StatementKind::Print(e) => write!(f, "print {e}"),
            StatementKind::Assert(e) => write!(f, "assert {e}"),
            StatementKind::Verify(claim, args) => {
                write!(f, "verify {claim}")?;
                write_command_args(f, args)
            }
            StatementKind::Probe(what, args) => {
                write!(f, "probe {what}")?;
                write_command_args(f, args)
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{};", s.kind)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_ring() {
        let s = parse_script("ring R = QQ[x,y];").unwrap();
        assert_eq!(s.statements.len(), 1);
        assert_eq!(s.statements[0].kind.keyword(), "ring");
    }

    #[test]
    fn module_and_verify() {
        let s = parse_script("ring R = QQ[x,y]; module M = coker [[x],[y]] over R; verify thm2.8 R (x,y);").unwrap();
        assert_eq!(s.statements.len(), 3);
        match &s.statements[2].kind {
            StatementKind::Verify(c, args) => {
                assert_eq!(c, "thm2.8");
                assert_eq!(args.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_matrix_points_at_plus() {
        let err = parse_script("ring R = QQ[x];\nmodule M = coker [[x]+] over R;").unwrap_err();
        match err {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (2, 22), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn undefined_and_type_errors() {
        assert!(matches!(parse_script("print foo;"), Err(Error::Parse { .. })));
        let e = parse_script("ring R = QQ[x]; module M = free 1 over R; module N = free 1 over M;").unwrap_err();
        assert!(e.to_string().contains("type mismatch"), "{e}");
    }

    #[test]
    fn round_trip() {
        let src = "ring R = GF(5)[x, y] / (x*y) with minimal_primes [(x), (y)] reduced ci;\n\
                   module M = coker [[x, -y^2], [1/2*x - y, 0]] over R degrees [0, 1];\n\
                   T = tensor_power(M, 3);\n\
                   assert minimal(T) == M;\nprint -(x - y)*x^2 - -y;\n\
                   verify thm2.10 M M with case 2;\nprobe regularity M e=1;";
        let s = parse_script(src).unwrap();
        let printed = s.to_string();
        let again = parse_script(&printed).unwrap();
        assert_eq!(s, again, "{printed}");
        assert_eq!(printed, again.to_string());
    }
}
