//! Name resolution and typing.
//!
//! Every named declaration is resolved on demand, so a file may use a name
//! before declaring it. Each declaration is built at most once; a failed
//! declaration is reported once and silently poisons whatever depends on it.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use taskrel_core::coarse::Antichain;
use taskrel_core::relcore::{Atom, Attribute, FinObject, Task};
use taskrel_core::substrate::{
    ConstructorCandidate, Process, Substrate, SubstrateAtom, SubstrateTheory,
};

use crate::dsl::ast::*;
use crate::dsl::parser::parse_antichain_literal;
use crate::dsl::print;
use crate::dsl::span::{SourceSpan, Spanned};
use crate::dsl::DslError;

/// A term annotated with its boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Typed {
    pub node: TypedNode,
    pub dom: FinObject,
    pub cod: FinObject,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypedNode {
    /// A declared `rel` or `task`.
    Ref(String),
    Id(FinObject),
    Swap(FinObject, FinObject),
    Copy(FinObject),
    Discard(FinObject),
    Match(FinObject),
    Unit(FinObject),
    State(Attribute),
    Test(Attribute),
    Seq(Box<Typed>, Box<Typed>),
    Par(Box<Typed>, Box<Typed>),
    Transpose(Box<Typed>),
}

/// What a task name stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaskDef {
    Rel(Task),
    Term(Typed),
}

impl TaskDef {
    pub fn dom(&self) -> &FinObject {
        match self {
            TaskDef::Rel(t) => t.dom(),
            TaskDef::Term(t) => &t.dom,
        }
    }

    pub fn cod(&self) -> &FinObject {
        match self {
            TaskDef::Rel(t) => t.cod(),
            TaskDef::Term(t) => &t.cod,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Query {
    Possible {
        task: String,
        /// The candidate's name, or its canonical text when given inline.
        candidate: String,
        value: ConstructorCandidate,
        span: SourceSpan,
    },
    Coarse {
        task: String,
        dom: Antichain,
        cod: Antichain,
        dom_name: String,
        cod_name: String,
        span: SourceSpan,
    },
}

#[derive(Debug, Clone)]
enum Value {
    Set(Arc<Atom>),
    Task(TaskDef),
    Attr(Attribute),
    Antichain(Antichain),
    Substrate(Arc<SubstrateAtom>),
    Process(Process),
    Candidate(ConstructorCandidate),
}

fn decl_kind(d: &Decl) -> &'static str {
    match d {
        Decl::Set { .. } => "set",
        Decl::Rel { .. } | Decl::Task { .. } => "task",
        Decl::Attr { .. } => "attribute",
        Decl::Antichain { .. } => "antichain",
        Decl::Substrate { .. } => "substrate",
        Decl::Process { .. } | Decl::ProcessDef { .. } => "process",
        Decl::Candidate { .. } => "candidate",
        Decl::CheckPossible { .. } | Decl::Coarse { .. } => "query",
    }
}

/// A typechecked file.
#[derive(Debug, Clone)]
pub struct Workspace {
    file: Arc<str>,
    module: Module,
    order: Vec<String>,
    values: BTreeMap<String, Value>,
    theory: SubstrateTheory,
    queries: Vec<Query>,
}

impl Workspace {
    pub fn file(&self) -> &str {
        &self.file
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    /// Kind of a declared name: `set`, `task`, `attribute`, ...
    pub fn kind_of(&self, name: &str) -> Option<&'static str> {
        self.values.get(name).map(|v| match v {
            Value::Set(_) => "set",
            Value::Task(_) => "task",
            Value::Attr(_) => "attribute",
            Value::Antichain(_) => "antichain",
            Value::Substrate(_) => "substrate",
            Value::Process(_) => "process",
            Value::Candidate(_) => "candidate",
        })
    }

    /// Names of `rel` and `task` declarations in source order.
    pub fn task_names(&self) -> Vec<&str> {
        self.order
            .iter()
            .filter(|n| matches!(self.values.get(*n), Some(Value::Task(_))))
            .map(String::as_str)
            .collect()
    }

    pub fn task_def(&self, name: &str) -> Option<&TaskDef> {
        match self.values.get(name)? {
            Value::Task(t) => Some(t),
            _ => None,
        }
    }

    pub fn set(&self, name: &str) -> Option<&Arc<Atom>> {
        match self.values.get(name)? {
            Value::Set(a) => Some(a),
            _ => None,
        }
    }

    pub fn attribute(&self, name: &str) -> Option<&Attribute> {
        match self.values.get(name)? {
            Value::Attr(a) => Some(a),
            _ => None,
        }
    }

    pub fn antichain(&self, name: &str) -> Option<&Antichain> {
        match self.values.get(name)? {
            Value::Antichain(a) => Some(a),
            _ => None,
        }
    }

    pub fn process(&self, name: &str) -> Option<&Process> {
        match self.values.get(name)? {
            Value::Process(p) => Some(p),
            _ => None,
        }
    }

    pub fn candidate(&self, name: &str) -> Option<&ConstructorCandidate> {
        match self.values.get(name)? {
            Value::Candidate(c) => Some(c),
            _ => None,
        }
    }

    /// Substrates and generator processes of the file.
    pub fn theory(&self) -> &SubstrateTheory {
        &self.theory
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    /// A declared antichain on `base`, or an antichain literal such as
    /// `{{a}, {b, c}}` whose members are read as elements of `base` (or names
    /// of attributes on it).
    pub fn antichain_arg(&self, arg: &str, base: &FinObject) -> Result<Antichain, DslError> {
        let arg_span = SourceSpan {
            file: Arc::from("<argument>"),
            offset: 0,
            line: 1,
            column: 1,
            length: arg.len() as u32,
        };
        if let Some(a) = self.antichain(arg) {
            if a.base() != base {
                return Err(DslError::BoundaryMismatch {
                    left: a.base().to_string(),
                    right: base.to_string(),
                    span: arg_span,
                });
            }
            return Ok(a.clone());
        }
        if arg.trim_start().starts_with('{') {
            let members = parse_antichain_literal("<argument>", arg)?;
            let attrs = members
                .iter()
                .map(|m| self.attr_ref(m, base))
                .collect::<Result<Vec<_>, _>>()?;
            return Antichain::new(base.clone(), attrs)
                .map_err(|e| not_antichain("<argument>", e, &arg_span));
        }
        Err(DslError::UnknownIdentifier {
            name: arg.to_string(),
            expected: "antichain",
            span: arg_span,
        })
    }

    fn attr_ref(&self, a: &Spanned<AttrRef>, carrier: &FinObject) -> Result<Attribute, DslError> {
        match &a.node {
            AttrRef::Literal(es) => literal_attribute(carrier, es),
            AttrRef::Named(n) => {
                let attr = self
                    .attribute(n)
                    .ok_or_else(|| DslError::UnknownIdentifier {
                        name: n.clone(),
                        expected: "attribute",
                        span: a.span.clone(),
                    })?;
                same_carrier(attr, carrier, &a.span)?;
                Ok(attr.clone())
            }
        }
    }
}

fn literal_attribute(
    carrier: &FinObject,
    elems: &[Spanned<ElemLit>],
) -> Result<Attribute, DslError> {
    let idx = elems
        .iter()
        .map(|e| element(carrier, e))
        .collect::<Result<Vec<_>, _>>()?;
    Attribute::new(carrier.clone(), idx).map_err(|e| DslError::from_core(e, &elems[0].span))
}

fn element(obj: &FinObject, e: &Spanned<ElemLit>) -> Result<usize, DslError> {
    obj.index_of_labels(&e.labels())
        .map_err(|err| DslError::from_core(err, &e.span))
}

fn same_carrier(attr: &Attribute, carrier: &FinObject, span: &SourceSpan) -> Result<(), DslError> {
    if attr.carrier() != carrier {
        return Err(DslError::Semantic {
            message: format!(
                "attribute on {} used where one on {} is required",
                attr.carrier(),
                carrier
            ),
            span: span.clone(),
        });
    }
    Ok(())
}

fn not_antichain(name: &str, e: taskrel_core::Error, span: &SourceSpan) -> DslError {
    match e {
        taskrel_core::Error::NotAntichain { nested, within } => DslError::NonAntichainDeclaration {
            name: name.to_string(),
            nested,
            within,
            span: span.clone(),
        },
        other => DslError::from_core(other, span),
    }
}

#[allow(clippy::large_enum_variant)]
enum State {
    Todo,
    Busy,
    Done(Value),
    Failed,
}

/// Marker for an error that has already been recorded.
struct Reported;

type R<T> = Result<T, Reported>;

struct Checker<'m> {
    decls: &'m [Spanned<Decl>],
    index: HashMap<&'m str, usize>,
    state: Vec<State>,
    errors: Vec<DslError>,
}

impl<'m> Checker<'m> {
    fn fail<T>(&mut self, e: DslError) -> R<T> {
        self.errors.push(e);
        Err(Reported)
    }

    fn core<T>(&mut self, r: taskrel_core::Result<T>, span: &SourceSpan) -> R<T> {
        r.or_else(|e| self.fail(DslError::from_core(e, span)))
    }

    fn dsl<T>(&mut self, r: Result<T, DslError>) -> R<T> {
        r.or_else(|e| self.fail(e))
    }

    fn resolve(&mut self, name: &str, span: &SourceSpan, want: &'static str) -> R<Value> {
        let Some(&i) = self.index.get(name) else {
            return self.fail(DslError::UnknownIdentifier {
                name: name.to_string(),
                expected: want,
                span: span.clone(),
            });
        };
        let found = decl_kind(&self.decls[i].node);
        if found != want {
            return self.fail(DslError::WrongKind {
                name: name.to_string(),
                expected: want,
                found,
                span: span.clone(),
            });
        }
        self.force(i)
    }

    fn force(&mut self, i: usize) -> R<Value> {
        match &self.state[i] {
            State::Done(v) => return Ok(v.clone()),
            State::Failed => return Err(Reported),
            State::Busy => {
                let d = &self.decls[i];
                let name = d.name().map(|n| n.node.clone()).unwrap_or_default();
                self.state[i] = State::Failed;
                return self.fail(DslError::Cycle {
                    name,
                    span: d.span.clone(),
                });
            }
            State::Todo => {}
        }
        self.state[i] = State::Busy;
        let built = self.build(i);
        // A cycle may already have marked this declaration as failed.
        if matches!(self.state[i], State::Failed) {
            return Err(Reported);
        }
        self.state[i] = match &built {
            Ok(v) => State::Done(v.clone()),
            Err(_) => State::Failed,
        };
        built
    }

    fn object(&mut self, o: &ObjExpr) -> R<FinObject> {
        let mut factors = Vec::with_capacity(o.factors.len());
        for f in &o.factors {
            match self.resolve(&f.node, &f.span, "set")? {
                Value::Set(a) => factors.push(a),
                _ => unreachable!("kind checked"),
            }
        }
        Ok(FinObject::from_factors(factors))
    }

    fn substrate(&mut self, o: &ObjExpr) -> R<Substrate> {
        let mut factors = Vec::with_capacity(o.factors.len());
        for f in &o.factors {
            match self.resolve(&f.node, &f.span, "substrate")? {
                Value::Substrate(a) => factors.push(a),
                _ => unreachable!("kind checked"),
            }
        }
        Ok(Substrate::from_factors(factors))
    }

    fn attr_named(&mut self, id: &Ident) -> R<Attribute> {
        match self.resolve(&id.node, &id.span, "attribute")? {
            Value::Attr(a) => Ok(a),
            _ => unreachable!("kind checked"),
        }
    }

    fn attr_ref(&mut self, a: &Spanned<AttrRef>, carrier: &FinObject) -> R<Attribute> {
        match &a.node {
            AttrRef::Literal(es) => self.dsl(literal_attribute(carrier, es)),
            AttrRef::Named(n) => {
                let attr = self.attr_named(&Spanned::new(n.clone(), a.span.clone()))?;
                self.dsl(same_carrier(&attr, carrier, &a.span))?;
                Ok(attr)
            }
        }
    }

    fn maplets(
        &mut self,
        dom: &FinObject,
        cod: &FinObject,
        ms: &[Maplet],
    ) -> R<Vec<(usize, usize)>> {
        let mut out = Vec::with_capacity(ms.len());
        for m in ms {
            let x = self.dsl(element(dom, &m.from))?;
            let y = self.dsl(element(cod, &m.to))?;
            out.push((x, y));
        }
        Ok(out)
    }

    fn task_ref(&mut self, name: &str, span: &SourceSpan) -> R<TaskDef> {
        match self.resolve(name, span, "task")? {
            Value::Task(t) => Ok(t),
            _ => unreachable!("kind checked"),
        }
    }

    fn typed(&mut self, t: &Spanned<Term>) -> R<Typed> {
        let span = t.span.clone();
        let mk = |node, dom, cod| Typed {
            node,
            dom,
            cod,
            span: span.clone(),
        };
        Ok(match &t.node {
            Term::Name(n) => {
                let def = self.task_ref(n, &t.span)?;
                mk(
                    TypedNode::Ref(n.clone()),
                    def.dom().clone(),
                    def.cod().clone(),
                )
            }
            Term::Id(x) => {
                let x = self.object(x)?;
                mk(TypedNode::Id(x.clone()), x.clone(), x)
            }
            Term::Swap(x, y) => {
                let (x, y) = (self.object(x), self.object(y));
                let (x, y) = (x?, y?);
                mk(
                    TypedNode::Swap(x.clone(), y.clone()),
                    x.tensor(&y),
                    y.tensor(&x),
                )
            }
            Term::Copy(x) => {
                let x = self.object(x)?;
                mk(TypedNode::Copy(x.clone()), x.clone(), x.tensor(&x))
            }
            Term::Discard(x) => {
                let x = self.object(x)?;
                mk(TypedNode::Discard(x.clone()), x, FinObject::unit())
            }
            Term::Match(x) => {
                let x = self.object(x)?;
                mk(TypedNode::Match(x.clone()), x.tensor(&x), x)
            }
            Term::Unit(x) => {
                let x = self.object(x)?;
                mk(TypedNode::Unit(x.clone()), FinObject::unit(), x)
            }
            Term::State(s) => {
                let s = self.attr_named(s)?;
                let c = s.carrier().clone();
                mk(TypedNode::State(s), FinObject::unit(), c)
            }
            Term::Test(s) => {
                let s = self.attr_named(s)?;
                let c = s.carrier().clone();
                mk(TypedNode::Test(s), c, FinObject::unit())
            }
            Term::Seq(a, b) => {
                let (a, b) = (self.typed(a), self.typed(b));
                let (a, b) = (a?, b?);
                if a.cod != b.dom {
                    return self.fail(DslError::BoundaryMismatch {
                        left: a.cod.to_string(),
                        right: b.dom.to_string(),
                        span: t.span.clone(),
                    });
                }
                let (dom, cod) = (a.dom.clone(), b.cod.clone());
                mk(TypedNode::Seq(Box::new(a), Box::new(b)), dom, cod)
            }
            Term::Par(a, b) => {
                let (a, b) = (self.typed(a), self.typed(b));
                let (a, b) = (a?, b?);
                let (dom, cod) = (a.dom.tensor(&b.dom), a.cod.tensor(&b.cod));
                mk(TypedNode::Par(Box::new(a), Box::new(b)), dom, cod)
            }
            Term::Transpose(a) => {
                let a = self.typed(a)?;
                let (dom, cod) = (a.cod.clone(), a.dom.clone());
                mk(TypedNode::Transpose(Box::new(a)), dom, cod)
            }
        })
    }

    fn process(&mut self, t: &Spanned<ProcTerm>) -> R<Process> {
        match &t.node {
            ProcTerm::Name(n) => match self.resolve(n, &t.span, "process")? {
                Value::Process(p) => Ok(p),
                _ => unreachable!("kind checked"),
            },
            ProcTerm::Id(x) => Ok(Process::identity(&self.substrate(x)?)),
            ProcTerm::Swap(x, y) => {
                let (x, y) = (self.substrate(x), self.substrate(y));
                Ok(Process::swap(&x?, &y?))
            }
            ProcTerm::Seq(a, b) => {
                let (a, b) = (self.process(a), self.process(b));
                let (a, b) = (a?, b?);
                self.core(a.seq(&b), &t.span)
            }
            ProcTerm::Par(a, b) => {
                let (a, b) = (self.process(a), self.process(b));
                Ok(a?.par(&b?))
            }
        }
    }

    fn candidate(&mut self, c: &CandidateExpr) -> R<ConstructorCandidate> {
        let constructor = self.substrate(&c.constructor)?;
        let states = self.attr_ref(&c.states, &constructor.states());
        let process = self.process(&c.via);
        let (states, process) = (states?, process?);
        self.core(
            ConstructorCandidate::new(constructor, states, process),
            &c.via.span,
        )
    }

    fn build(&mut self, i: usize) -> R<Value> {
        let decl = &self.decls[i];
        let span = &decl.span;
        match &decl.node {
            Decl::Set { name, labels } => {
                let labels: Vec<&str> = labels.iter().map(|l| l.node.as_str()).collect();
                let atom = self.core(Atom::new(name.node.clone(), labels), span)?;
                Ok(Value::Set(atom))
            }
            Decl::Rel {
                dom, cod, maplets, ..
            } => {
                let (dom, cod) = (self.object(dom), self.object(cod));
                let (dom, cod) = (dom?, cod?);
                let pairs = self.maplets(&dom, &cod, maplets)?;
                let task = self.core(Task::from_pairs(dom, cod, pairs), span)?;
                Ok(Value::Task(TaskDef::Rel(task)))
            }
            Decl::Attr { on, members, .. } => {
                let on = self.object(on)?;
                Ok(Value::Attr(self.dsl(literal_attribute(&on, members))?))
            }
            Decl::Antichain { name, on, members } => {
                let on = self.object(on)?;
                let mut attrs = Vec::with_capacity(members.len());
                let mut ok = true;
                for m in members {
                    match self.attr_ref(m, &on) {
                        Ok(a) => attrs.push(a),
                        Err(_) => ok = false,
                    }
                }
                if !ok {
                    return Err(Reported);
                }
                match Antichain::new(on, attrs) {
                    Ok(a) => Ok(Value::Antichain(a)),
                    Err(e) => self.fail(not_antichain(&name.node, e, span)),
                }
            }
            Decl::Substrate { name, states } => {
                let atom = match self.resolve(&states.node, &states.span, "set")? {
                    Value::Set(a) => a,
                    _ => unreachable!("kind checked"),
                };
                let s = self.core(SubstrateAtom::new(name.node.clone(), atom), span)?;
                Ok(Value::Substrate(s))
            }
            Decl::Process {
                name,
                dom,
                cod,
                maplets,
            } => {
                let (dom, cod) = (self.substrate(dom), self.substrate(cod));
                let (dom, cod) = (dom?, cod?);
                let pairs = self.maplets(&dom.states(), &cod.states(), maplets)?;
                let p = self.core(
                    Process::from_maplets(name.node.clone(), dom, cod, pairs),
                    span,
                )?;
                Ok(Value::Process(p))
            }
            Decl::ProcessDef { term, .. } => Ok(Value::Process(self.process(term)?)),
            Decl::Task { term, .. } => Ok(Value::Task(TaskDef::Term(self.typed(term)?))),
            Decl::Candidate { candidate, .. } => Ok(Value::Candidate(self.candidate(candidate)?)),
            Decl::CheckPossible { .. } | Decl::Coarse { .. } => {
                unreachable!("queries bind no name")
            }
        }
    }

    fn query(&mut self, d: &Spanned<Decl>) -> R<Query> {
        match &d.node {
            Decl::CheckPossible { task, with } => {
                let def = self.task_ref(&task.node, &task.span);
                let (candidate, value) = match with {
                    CandidateRef::Named(n) => match self.resolve(&n.node, &n.span, "candidate") {
                        Ok(Value::Candidate(c)) => (n.node.clone(), Ok(c)),
                        _ => (n.node.clone(), Err(Reported)),
                    },
                    CandidateRef::Inline(c) => {
                        let text = print::decl(&d.node);
                        let text = text.split(" with ").nth(1).unwrap_or_default().to_string();
                        (text, self.candidate(c))
                    }
                };
                let (def, value) = (def?, value?);
                let (h, k) = (value.input().states(), value.output().states());
                for (found, want) in [(def.dom(), &h), (def.cod(), &k)] {
                    if found != want {
                        return self.fail(DslError::BoundaryMismatch {
                            left: found.to_string(),
                            right: want.to_string(),
                            span: d.span.clone(),
                        });
                    }
                }
                Ok(Query::Possible {
                    task: task.node.clone(),
                    candidate,
                    value,
                    span: d.span.clone(),
                })
            }
            Decl::Coarse { task, dom, cod } => {
                let def = self.task_ref(&task.node, &task.span);
                let mut bar = |id: &Ident| match self.resolve(&id.node, &id.span, "antichain") {
                    Ok(Value::Antichain(a)) => Ok(a),
                    _ => Err(Reported),
                };
                let (xbar, ybar) = (bar(dom), bar(cod));
                let (def, xbar, ybar) = (def?, xbar?, ybar?);
                for (base, want, id) in
                    [(xbar.base(), def.dom(), dom), (ybar.base(), def.cod(), cod)]
                {
                    if base != want {
                        return self.fail(DslError::BoundaryMismatch {
                            left: base.to_string(),
                            right: want.to_string(),
                            span: id.span.clone(),
                        });
                    }
                }
                Ok(Query::Coarse {
                    task: task.node.clone(),
                    dom: xbar,
                    cod: ybar,
                    dom_name: dom.node.clone(),
                    cod_name: cod.node.clone(),
                    span: d.span.clone(),
                })
            }
            _ => unreachable!("only queries"),
        }
    }
}

/// Resolves every name in `module`, builds every declared value and types
/// every term. All errors found are returned, in source order of discovery.
pub fn typecheck(file: &str, module: Module) -> Result<Workspace, Vec<DslError>> {
    let mut errors = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, d) in module.decls.iter().enumerate() {
        let Some(name) = d.name() else { continue };
        if name.node == "I" {
            errors.push(DslError::Semantic {
                message: "`I` is reserved for the unit object".into(),
                span: name.span.clone(),
            });
            continue;
        }
        if let Some(&j) = index.get(name.node.as_str()) {
            errors.push(DslError::Duplicate {
                name: name.node.clone(),
                previous: module.decls[j].name().expect("named").span.clone(),
                span: name.span.clone(),
            });
            continue;
        }
        index.insert(&name.node, i);
    }

    let mut checker = Checker {
        decls: &module.decls,
        index,
        state: module.decls.iter().map(|_| State::Todo).collect(),
        errors,
    };
    let mut owners: Vec<usize> = checker.index.values().copied().collect();
    owners.sort_unstable();
    for &i in &owners {
        let _ = checker.force(i);
    }
    let mut queries = Vec::new();
    for d in &module.decls {
        if d.name().is_none() {
            if let Ok(q) = checker.query(d) {
                queries.push(q);
            }
        }
    }

    let mut theory = SubstrateTheory::new();
    let mut values = BTreeMap::new();
    let mut order = Vec::new();
    for &i in &owners {
        let State::Done(v) = &checker.state[i] else {
            continue;
        };
        let d = &module.decls[i];
        let added = match (v, &d.node) {
            (Value::Substrate(s), _) => theory.add_atom(s.clone()),
            (Value::Process(p), Decl::Process { .. }) => theory.add_generator(p.clone()),
            _ => Ok(()),
        };
        if let Err(e) = added {
            checker.errors.push(DslError::from_core(e, &d.span));
        }
        let name = d.name().expect("named").node.clone();
        order.push(name.clone());
        values.insert(name, v.clone());
    }

    if !checker.errors.is_empty() {
        return Err(checker.errors);
    }
    Ok(Workspace {
        file: Arc::from(file),
        module,
        order,
        values,
        theory,
        queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::load;

    const BASE: &str = "set X = {a, b}\nset Y = {u, v, w}\n\
                        rel A : X -> Y = { a |-> u, b |-> w }\n";

    fn errors(src: &str) -> Vec<DslError> {
        load("t.ct", src).unwrap_err()
    }

    #[test]
    fn identity_then_task() {
        let ws = load("t.ct", &format!("{BASE}task T = id(X) ; A")).unwrap();
        let def = ws.task_def("T").unwrap();
        assert_eq!(
            (def.dom().to_string(), def.cod().to_string()),
            ("X".into(), "Y".into())
        );
    }

    #[test]
    fn seq_boundary_mismatch() {
        let e = errors(&format!("{BASE}task T = A ; A"));
        match &e[..] {
            [DslError::BoundaryMismatch { left, right, span }] => {
                assert_eq!((left.as_str(), right.as_str()), ("Y", "X"));
                assert_eq!(span.line, 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nested_antichain_rejected() {
        let e = errors("set X = {a, b}\nantichain W = {{a}, {a, b}}");
        assert!(matches!(&e[0], DslError::Parse { .. }));
        let e = errors("set X = {a, b}\nantichain W on X = {{a}, {a, b}}");
        assert!(matches!(&e[..], [DslError::NonAntichainDeclaration { name, .. }] if name == "W"));
    }

    #[test]
    fn order_independent() {
        let ws = load(
            "t.ct",
            "task T = A^T\nrel A : X -> X = { a |-> b }\nset X = {a, b}",
        )
        .unwrap();
        assert_eq!(ws.task_names(), ["T", "A"]);
    }

    #[test]
    fn unknown_and_wrong_kind() {
        let e = errors(&format!("{BASE}task T = B ; id(Z)"));
        assert_eq!(e.len(), 2);
        assert!(
            matches!(&e[0], DslError::UnknownIdentifier { name, expected: "task", .. } if name == "B")
        );
        assert!(
            matches!(&e[1], DslError::UnknownIdentifier { name, expected: "set", .. } if name == "Z")
        );
        let e = errors(&format!("{BASE}task T = X"));
        assert!(matches!(
            &e[0],
            DslError::WrongKind {
                expected: "task",
                found: "set",
                ..
            }
        ));
    }

    #[test]
    fn cycles_and_duplicates() {
        let e = errors("set X = {a}\ntask T = U\ntask U = T ; id(X)");
        assert!(e.iter().any(|e| matches!(e, DslError::Cycle { .. })));
        let e = errors("set X = {a}\nset X = {b}");
        assert!(matches!(&e[..], [DslError::Duplicate { .. }]));
        let e = errors("set I = {a}");
        assert!(matches!(&e[..], [DslError::Semantic { .. }]));
    }

    #[test]
    fn bad_elements_point_at_the_literal() {
        let e = errors("set X = {a}\nrel F : X -> X = { a |-> z }");
        let span = e[0].span();
        assert_eq!((span.line, span.column, span.length), (2, 26, 1));
        let e = errors("set X = {a}\nrel F : X -> X * X = { a |-> a }");
        assert!(matches!(&e[0], DslError::Semantic { .. }));
    }

    #[test]
    fn substrates_processes_and_candidates() {
        let src = "set Bit = {0, 1}\nsubstrate bit states Bit\n\
                   process NOT : bit -> bit = { 0 |-> 1, 1 |-> 0 }\n\
                   process F = NOT ; NOT * id(I)\n\
                   rel Flip : Bit -> Bit = { 0 |-> 1, 1 |-> 0 }\n\
                   candidate C = constructor I states {*} via NOT\n\
                   check possible Flip with C\n\
                   check possible Flip with constructor bit states {1} via swap(bit, bit)";
        let ws = load("t.ct", src).unwrap();
        assert_eq!(ws.theory().generators().len(), 1);
        assert_eq!(ws.process("F").unwrap().map(), &[0, 1]);
        assert_eq!(ws.queries().len(), 2);
        let e = errors(
            "set Bit = {0, 1}\nsubstrate bit states Bit\nprocess P : bit -> bit = { 0 |-> 1 }",
        );
        assert!(
            matches!(&e[0], DslError::Semantic { message, .. } if message.contains("no image"))
        );
    }

    #[test]
    fn antichain_arguments() {
        let ws = load(
            "t.ct",
            &format!("{BASE}antichain W on X = {{{{a}}, {{b}}}}\nattr S on Y = {{u, v}}"),
        )
        .unwrap();
        let x = ws.set("X").map(FinObject::atom).unwrap();
        let y = ws.set("Y").map(FinObject::atom).unwrap();
        assert_eq!(ws.antichain_arg("W", &x).unwrap().len(), 2);
        assert_eq!(ws.antichain_arg("{S, {w}}", &y).unwrap().len(), 2);
        assert!(matches!(
            ws.antichain_arg("{{a}, {a, b}}", &x),
            Err(DslError::NonAntichainDeclaration { .. })
        ));
        assert!(matches!(
            ws.antichain_arg("{{a}", &x),
            Err(DslError::Parse { .. })
        ));
        assert!(ws.antichain_arg("W", &y).is_err());
        assert!(ws.antichain_arg("V", &y).is_err());
    }
}
