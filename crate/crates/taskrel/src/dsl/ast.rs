//! Syntax trees for `.ct` files.

use crate::dsl::span::Spanned;

pub type Ident = Spanned<String>;

/// A word of set (or substrate) names; empty for the unit `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjExpr {
    pub factors: Vec<Ident>,
}

impl ObjExpr {
    pub fn unit() -> Self {
        ObjExpr {
            factors: Vec::new(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }
}

/// An element literal: `a`, `(a,b)` or `*`. Tuples are flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemLit {
    Unit,
    Label(String),
    Tuple(Vec<String>),
}

impl ElemLit {
    /// One label per factor of the object the element belongs to.
    pub fn labels(&self) -> Vec<&str> {
        match self {
            ElemLit::Unit => Vec::new(),
            ElemLit::Label(l) => vec![l.as_str()],
            ElemLit::Tuple(ls) => ls.iter().map(String::as_str).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maplet {
    pub from: Spanned<ElemLit>,
    pub to: Spanned<ElemLit>,
}

/// An attribute given by name or as a literal member set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttrRef {
    Named(String),
    Literal(Vec<Spanned<ElemLit>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Name(String),
    Id(ObjExpr),
    Swap(ObjExpr, ObjExpr),
    Copy(ObjExpr),
    Discard(ObjExpr),
    Match(ObjExpr),
    /// `unit(X)`: the trivial attribute of `X` as a state `I -> X`.
    Unit(ObjExpr),
    State(Ident),
    Test(Ident),
    Seq(Box<Spanned<Term>>, Box<Spanned<Term>>),
    Par(Box<Spanned<Term>>, Box<Spanned<Term>>),
    Transpose(Box<Spanned<Term>>),
}

/// Process expressions over declared processes and structural maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcTerm {
    Name(String),
    Id(ObjExpr),
    Swap(ObjExpr, ObjExpr),
    Seq(Box<Spanned<ProcTerm>>, Box<Spanned<ProcTerm>>),
    Par(Box<Spanned<ProcTerm>>, Box<Spanned<ProcTerm>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateExpr {
    pub constructor: ObjExpr,
    pub states: Spanned<AttrRef>,
    pub via: Spanned<ProcTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateRef {
    Named(Ident),
    Inline(CandidateExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Set {
        name: Ident,
        labels: Vec<Ident>,
    },
    Rel {
        name: Ident,
        dom: ObjExpr,
        cod: ObjExpr,
        maplets: Vec<Maplet>,
    },
    Attr {
        name: Ident,
        on: ObjExpr,
        members: Vec<Spanned<ElemLit>>,
    },
    Antichain {
        name: Ident,
        on: ObjExpr,
        members: Vec<Spanned<AttrRef>>,
    },
    Substrate {
        name: Ident,
        states: Ident,
    },
    /// A generator given by its state table.
    Process {
        name: Ident,
        dom: ObjExpr,
        cod: ObjExpr,
        maplets: Vec<Maplet>,
    },
    /// A named composite of processes.
    ProcessDef {
        name: Ident,
        term: Spanned<ProcTerm>,
    },
    Task {
        name: Ident,
        term: Spanned<Term>,
    },
    Candidate {
        name: Ident,
        candidate: CandidateExpr,
    },
    CheckPossible {
        task: Ident,
        with: CandidateRef,
    },
    Coarse {
        task: Ident,
        dom: Ident,
        cod: Ident,
    },
}

impl Decl {
    /// The name this declaration binds; queries bind none.
    pub fn name(&self) -> Option<&Ident> {
        match self {
            Decl::Set { name, .. }
            | Decl::Rel { name, .. }
            | Decl::Attr { name, .. }
            | Decl::Antichain { name, .. }
            | Decl::Substrate { name, .. }
            | Decl::Process { name, .. }
            | Decl::ProcessDef { name, .. }
            | Decl::Task { name, .. }
            | Decl::Candidate { name, .. } => Some(name),
            Decl::CheckPossible { .. } | Decl::Coarse { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Set { .. } => "set",
            Decl::Rel { .. } => "rel",
            Decl::Attr { .. } => "attr",
            Decl::Antichain { .. } => "antichain",
            Decl::Substrate { .. } => "substrate",
            Decl::Process { .. } | Decl::ProcessDef { .. } => "process",
            Decl::Task { .. } => "task",
            Decl::Candidate { .. } => "candidate",
            Decl::CheckPossible { .. } => "check",
            Decl::Coarse { .. } => "coarse",
        }
    }
}

/// A parsed file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Module {
    pub decls: Vec<Spanned<Decl>>,
}
