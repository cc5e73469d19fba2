//! Canonical text for syntax trees. Parsing the output gives back an equal
//! tree.

use std::fmt::Write;

use crate::dsl::ast::*;
use crate::dsl::lexer::Keyword;

fn plain_label(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_ascii_alphanumeric() || first == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !Keyword::ALL.iter().any(|k| k.as_str() == s)
}

pub fn label(s: &str) -> String {
    if plain_label(s) {
        s.to_string()
    } else {
        let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
        format!("\"{escaped}\"")
    }
}

pub fn elem(e: &ElemLit) -> String {
    match e {
        ElemLit::Unit => "*".into(),
        ElemLit::Label(l) => label(l),
        ElemLit::Tuple(ls) => format!(
            "({})",
            ls.iter().map(|l| label(l)).collect::<Vec<_>>().join(",")
        ),
    }
}

pub fn obj(o: &ObjExpr) -> String {
    if o.is_unit() {
        return "I".into();
    }
    o.factors
        .iter()
        .map(|f| f.node.as_str())
        .collect::<Vec<_>>()
        .join(" * ")
}

fn set_of(items: impl Iterator<Item = String>) -> String {
    format!("{{{}}}", items.collect::<Vec<_>>().join(", "))
}

fn maplets(ms: &[Maplet]) -> String {
    if ms.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = ms
        .iter()
        .map(|m| format!("{} |-> {}", elem(&m.from), elem(&m.to)))
        .collect();
    format!("{{ {} }}", parts.join(", "))
}

pub fn attr_ref(a: &AttrRef) -> String {
    match a {
        AttrRef::Named(n) => n.clone(),
        AttrRef::Literal(es) => set_of(es.iter().map(|e| elem(e))),
    }
}

fn wrap(s: String, yes: bool) -> String {
    if yes {
        format!("({s})")
    } else {
        s
    }
}

// Levels: 0 sequential, 1 parallel, 2 postfix and atoms.
fn term_at(t: &Term, level: u8) -> String {
    match t {
        Term::Seq(a, b) => wrap(format!("{} ; {}", term_at(a, 0), term_at(b, 1)), level > 0),
        Term::Par(a, b) => wrap(format!("{} * {}", term_at(a, 1), term_at(b, 2)), level > 1),
        Term::Transpose(a) => format!("{}^T", term_at(a, 2)),
        Term::Name(n) => n.clone(),
        Term::Id(x) => format!("id({})", obj(x)),
        Term::Swap(x, y) => format!("swap({}, {})", obj(x), obj(y)),
        Term::Copy(x) => format!("copy({})", obj(x)),
        Term::Discard(x) => format!("discard({})", obj(x)),
        Term::Match(x) => format!("match({})", obj(x)),
        Term::Unit(x) => format!("unit({})", obj(x)),
        Term::State(s) => format!("state({})", s.node),
        Term::Test(s) => format!("test({})", s.node),
    }
}

pub fn term(t: &Term) -> String {
    term_at(t, 0)
}

fn proc_at(t: &ProcTerm, level: u8) -> String {
    match t {
        ProcTerm::Seq(a, b) => wrap(format!("{} ; {}", proc_at(a, 0), proc_at(b, 1)), level > 0),
        ProcTerm::Par(a, b) => wrap(format!("{} * {}", proc_at(a, 1), proc_at(b, 2)), level > 1),
        ProcTerm::Name(n) => n.clone(),
        ProcTerm::Id(x) => format!("id({})", obj(x)),
        ProcTerm::Swap(x, y) => format!("swap({}, {})", obj(x), obj(y)),
    }
}

pub fn proc_term(t: &ProcTerm) -> String {
    proc_at(t, 0)
}

fn candidate(c: &CandidateExpr) -> String {
    format!(
        "constructor {} states {} via {}",
        obj(&c.constructor),
        attr_ref(&c.states),
        proc_term(&c.via)
    )
}

pub fn decl(d: &Decl) -> String {
    match d {
        Decl::Set { name, labels } => {
            format!(
                "set {} = {}",
                name.node,
                set_of(labels.iter().map(|l| label(l)))
            )
        }
        Decl::Rel {
            name,
            dom,
            cod,
            maplets: ms,
        } => {
            format!(
                "rel {} : {} -> {} = {}",
                name.node,
                obj(dom),
                obj(cod),
                maplets(ms)
            )
        }
        Decl::Attr { name, on, members } => {
            format!(
                "attr {} on {} = {}",
                name.node,
                obj(on),
                set_of(members.iter().map(|e| elem(e)))
            )
        }
        Decl::Antichain { name, on, members } => format!(
            "antichain {} on {} = {}",
            name.node,
            obj(on),
            set_of(members.iter().map(|a| attr_ref(a)))
        ),
        Decl::Substrate { name, states } => {
            format!("substrate {} states {}", name.node, states.node)
        }
        Decl::Process {
            name,
            dom,
            cod,
            maplets: ms,
        } => {
            format!(
                "process {} : {} -> {} = {}",
                name.node,
                obj(dom),
                obj(cod),
                maplets(ms)
            )
        }
        Decl::ProcessDef { name, term: t } => format!("process {} = {}", name.node, proc_term(t)),
        Decl::Task { name, term: t } => format!("task {} = {}", name.node, term(t)),
        Decl::Candidate { name, candidate: c } => {
            format!("candidate {} = {}", name.node, candidate(c))
        }
        Decl::CheckPossible { task, with } => {
            let with = match with {
                CandidateRef::Named(n) => n.node.clone(),
                CandidateRef::Inline(c) => candidate(c),
            };
            format!("check possible {} with {}", task.node, with)
        }
        Decl::Coarse { task, dom, cod } => {
            format!("coarse {} via {}, {}", task.node, dom.node, cod.node)
        }
    }
}

/// One declaration per line, in source order.
pub fn module(m: &Module) -> String {
    let mut out = String::new();
    for d in &m.decls {
        writeln!(out, "{}", decl(d)).expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::{parse, parse_term};

    #[test]
    fn minimal_parentheses() {
        for (src, want) in [
            ("(A ; B) ; C", "A ; B ; C"),
            ("A ; (B ; C)", "A ; (B ; C)"),
            ("(A * B) ; C", "A * B ; C"),
            ("A * (B ; C)", "A * (B ; C)"),
            ("A * (B * C)", "A * (B * C)"),
            ("(A * B)^T", "(A * B)^T"),
            ("((A))^T^T", "A^T^T"),
        ] {
            assert_eq!(term(&parse_term("t", src).unwrap()), want, "{src}");
        }
    }

    #[test]
    fn labels_are_quoted_when_needed() {
        assert_eq!(label("a"), "a");
        assert_eq!(label("0"), "0");
        assert_eq!(label("on"), "\"on\"");
        assert_eq!(label("a b"), "\"a b\"");
        assert_eq!(label("q\""), "\"q\\\"\"");
    }

    #[test]
    fn round_trip() {
        let src = "set X = {a, \"b c\", \"on\"}\n\
                   rel F:X->X*X={a|->(a,\"on\"),\"b c\" |-> (a , a)}\n\
                   rel E : I -> X = {}\n\
                   antichain W on X = {{a}, S}\n\
                   attr S on X = {\"b c\"}\n\
                   process P = (A;B) * id(I) ; swap(x, y)\n\
                   task T = (F ; copy(X)^T)^T * unit(X)\n\
                   check possible T with constructor I states {*} via P";
        let m = parse("f.ct", src).unwrap();
        let text = module(&m);
        assert_eq!(parse("g.ct", &text).unwrap(), m);
        assert_eq!(module(&parse("g.ct", &text).unwrap()), text);
        assert!(text.contains("rel F : X -> X * X = { a |-> (a,\"on\"), \"b c\" |-> (a,a) }"));
        assert!(text.contains("rel E : I -> X = {}"));
    }
}
