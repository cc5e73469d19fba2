use crate::dsl::ast::*;
use crate::dsl::lexer::{tokenize, Keyword, Token, TokenKind};
use crate::dsl::span::{SourceSpan, Spanned};
use crate::dsl::DslError;

/// Parses a whole file.
pub fn parse(file: &str, source: &str) -> Result<Module, DslError> {
    let tokens = tokenize(file, source)?;
    parse_tokens(&tokens)
}

pub fn parse_tokens(tokens: &[Token]) -> Result<Module, DslError> {
    let mut p = Parser { tokens, pos: 0 };
    let mut decls = Vec::new();
    while !p.at(&TokenKind::Eof) {
        decls.push(p.decl()?);
    }
    Ok(Module { decls })
}

/// Parses a single term, for command-line arguments and tests.
pub fn parse_term(file: &str, source: &str) -> Result<Spanned<Term>, DslError> {
    let tokens = tokenize(file, source)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
    };
    let t = p.term()?;
    p.expect(TokenKind::Eof, "end of input")?;
    Ok(t)
}

/// Parses an antichain literal such as `{{a}, {b, c}}`.
pub fn parse_antichain_literal(
    file: &str,
    source: &str,
) -> Result<Vec<Spanned<AttrRef>>, DslError> {
    let tokens = tokenize(file, source)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
    };
    let members = p.braced(|p| p.attr_ref())?;
    p.expect(TokenKind::Eof, "end of input")?;
    Ok(members)
}

const BUILTINS: [&str; 8] = [
    "id", "swap", "copy", "discard", "match", "unit", "state", "test",
];

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &'a Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, ahead: usize) -> &'a TokenKind {
        &self.tokens[(self.pos + ahead).min(self.tokens.len() - 1)].kind
    }

    fn at(&self, kind: &TokenKind) -> bool {
        &self.peek().kind == kind
    }

    fn bump(&mut self) -> &'a Token {
        let t = &self.tokens[self.pos];
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> &'a SourceSpan {
        &self.tokens[self.pos.saturating_sub(1)].span
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, DslError> {
        let t = self.peek();
        Err(DslError::Parse {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.kind.to_string(),
            span: t.span.clone(),
        })
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.at(kind) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<&'a Token, DslError> {
        if self.at(&kind) {
            Ok(self.bump())
        } else {
            self.error(&[what])
        }
    }

    fn keyword(&mut self, k: Keyword) -> Result<&'a Token, DslError> {
        self.expect(TokenKind::Keyword(k), &format!("`{}`", k.as_str()))
    }

    fn ident(&mut self) -> Result<Ident, DslError> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let s = s.clone();
                Ok(Spanned::new(s, self.bump().span.clone()))
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn label(&mut self) -> Result<Ident, DslError> {
        match &self.peek().kind {
            TokenKind::Ident(s) | TokenKind::Number(s) | TokenKind::Quoted(s) => {
                let s = s.clone();
                Ok(Spanned::new(s, self.bump().span.clone()))
            }
            _ => self.error(&["label"]),
        }
    }

    /// `{ item, item, ... }`, possibly empty.
    fn braced<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, DslError>,
    ) -> Result<Vec<T>, DslError> {
        self.expect(TokenKind::LBrace, "`{`")?;
        let mut out = Vec::new();
        if self.eat(&TokenKind::RBrace) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(&TokenKind::RBrace) {
                return Ok(out);
            }
            if !self.eat(&TokenKind::Comma) {
                return self.error(&["`,`", "`}`"]);
            }
        }
    }

    fn decl(&mut self) -> Result<Spanned<Decl>, DslError> {
        let start = self.peek().span.clone();
        let decl = match self.peek().kind {
            TokenKind::Keyword(Keyword::Set) => {
                self.bump();
                let name = self.ident()?;
                self.expect(TokenKind::Eq, "`=`")?;
                let labels = self.braced(|p| p.label())?;
                Decl::Set { name, labels }
            }
            TokenKind::Keyword(Keyword::Rel) => {
                self.bump();
                let name = self.ident()?;
                self.expect(TokenKind::Colon, "`:`")?;
                let dom = self.obj()?;
                self.expect(TokenKind::Arrow, "`->`")?;
                let cod = self.obj()?;
                self.expect(TokenKind::Eq, "`=`")?;
                let maplets = self.braced(|p| p.maplet())?;
                Decl::Rel {
                    name,
                    dom,
                    cod,
                    maplets,
                }
            }
            TokenKind::Keyword(Keyword::Attr) => {
                self.bump();
                let name = self.ident()?;
                self.keyword(Keyword::On)?;
                let on = self.obj()?;
                self.expect(TokenKind::Eq, "`=`")?;
                let members = self.braced(|p| p.elem())?;
                Decl::Attr { name, on, members }
            }
            TokenKind::Keyword(Keyword::Antichain) => {
                self.bump();
                let name = self.ident()?;
                self.keyword(Keyword::On)?;
                let on = self.obj()?;
                self.expect(TokenKind::Eq, "`=`")?;
                let members = self.braced(|p| p.attr_ref())?;
                Decl::Antichain { name, on, members }
            }
            TokenKind::Keyword(Keyword::Substrate) => {
                self.bump();
                let name = self.ident()?;
                self.keyword(Keyword::States)?;
                let states = self.ident()?;
                Decl::Substrate { name, states }
            }
            TokenKind::Keyword(Keyword::Process) => {
                self.bump();
                let name = self.ident()?;
                if self.eat(&TokenKind::Colon) {
                    let dom = self.obj()?;
                    self.expect(TokenKind::Arrow, "`->`")?;
                    let cod = self.obj()?;
                    self.expect(TokenKind::Eq, "`=`")?;
                    let maplets = self.braced(|p| p.maplet())?;
                    Decl::Process {
                        name,
                        dom,
                        cod,
                        maplets,
                    }
                } else if self.eat(&TokenKind::Eq) {
                    let term = self.proc_term()?;
                    Decl::ProcessDef { name, term }
                } else {
                    return self.error(&["`:`", "`=`"]);
                }
            }
            TokenKind::Keyword(Keyword::Task) => {
                self.bump();
                let name = self.ident()?;
                self.expect(TokenKind::Eq, "`=`")?;
                let term = self.term()?;
                Decl::Task { name, term }
            }
            TokenKind::Keyword(Keyword::Candidate) => {
                self.bump();
                let name = self.ident()?;
                self.expect(TokenKind::Eq, "`=`")?;
                let candidate = self.candidate()?;
                Decl::Candidate { name, candidate }
            }
            TokenKind::Keyword(Keyword::Check) => {
                self.bump();
                self.keyword(Keyword::Possible)?;
                let task = self.ident()?;
                self.keyword(Keyword::With)?;
                let with = if self.at(&TokenKind::Keyword(Keyword::Constructor)) {
                    CandidateRef::Inline(self.candidate()?)
                } else if matches!(self.peek().kind, TokenKind::Ident(_)) {
                    CandidateRef::Named(self.ident()?)
                } else {
                    return self.error(&["identifier", "`constructor`"]);
                };
                Decl::CheckPossible { task, with }
            }
            TokenKind::Keyword(Keyword::Coarse) => {
                self.bump();
                let task = self.ident()?;
                self.keyword(Keyword::Via)?;
                let dom = self.ident()?;
                self.expect(TokenKind::Comma, "`,`")?;
                let cod = self.ident()?;
                Decl::Coarse { task, dom, cod }
            }
            _ => {
                return self.error(&[
                    "`set`",
                    "`rel`",
                    "`attr`",
                    "`antichain`",
                    "`substrate`",
                    "`process`",
                    "`task`",
                    "`candidate`",
                    "`check`",
                    "`coarse`",
                ])
            }
        };
        Ok(Spanned::new(decl, start.to(self.prev_span())))
    }

    fn candidate(&mut self) -> Result<CandidateExpr, DslError> {
        self.keyword(Keyword::Constructor)?;
        let constructor = self.obj()?;
        self.keyword(Keyword::States)?;
        let states = self.attr_ref()?;
        self.keyword(Keyword::Via)?;
        let via = self.proc_term()?;
        Ok(CandidateExpr {
            constructor,
            states,
            via,
        })
    }

    /// `I`, or names joined by `*`. `I` factors are dropped.
    fn obj(&mut self) -> Result<ObjExpr, DslError> {
        let mut factors = Vec::new();
        loop {
            let name = match &self.peek().kind {
                TokenKind::Ident(_) => self.ident()?,
                _ => return self.error(&["identifier", "`I`"]),
            };
            if name.node != "I" {
                factors.push(name);
            }
            if !self.eat(&TokenKind::Star) {
                return Ok(ObjExpr { factors });
            }
        }
    }

    fn elem(&mut self) -> Result<Spanned<ElemLit>, DslError> {
        let start = self.peek().span.clone();
        let lit = if self.eat(&TokenKind::Star) {
            ElemLit::Unit
        } else if self.eat(&TokenKind::LParen) {
            let mut labels = vec![self.label()?.node];
            while self.eat(&TokenKind::Comma) {
                labels.push(self.label()?.node);
            }
            self.expect(TokenKind::RParen, "`)`")?;
            if labels.len() == 1 {
                ElemLit::Label(labels.pop().unwrap())
            } else {
                ElemLit::Tuple(labels)
            }
        } else if matches!(
            self.peek().kind,
            TokenKind::Ident(_) | TokenKind::Number(_) | TokenKind::Quoted(_)
        ) {
            ElemLit::Label(self.label()?.node)
        } else {
            return self.error(&["label", "`(`", "`*`"]);
        };
        Ok(Spanned::new(lit, start.to(self.prev_span())))
    }

    fn maplet(&mut self) -> Result<Maplet, DslError> {
        let from = self.elem()?;
        self.expect(TokenKind::MapsTo, "`|->`")?;
        let to = self.elem()?;
        Ok(Maplet { from, to })
    }

    fn attr_ref(&mut self) -> Result<Spanned<AttrRef>, DslError> {
        let start = self.peek().span.clone();
        let node = match self.peek().kind {
            TokenKind::LBrace => AttrRef::Literal(self.braced(|p| p.elem())?),
            TokenKind::Ident(_) => AttrRef::Named(self.ident()?.node),
            _ => return self.error(&["`{`", "identifier"]),
        };
        Ok(Spanned::new(node, start.to(self.prev_span())))
    }

    fn builtin_ahead(&self) -> Option<&'a str> {
        match (&self.peek().kind, self.peek_at(1)) {
            (TokenKind::Ident(s), TokenKind::LParen) if BUILTINS.contains(&s.as_str()) => {
                Some(s.as_str())
            }
            _ => None,
        }
    }

    fn term(&mut self) -> Result<Spanned<Term>, DslError> {
        let mut lhs = self.par_term()?;
        while self.eat(&TokenKind::Semi) {
            let rhs = self.par_term()?;
            let span = lhs.span.to(&rhs.span);
            lhs = Spanned::new(Term::Seq(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn par_term(&mut self) -> Result<Spanned<Term>, DslError> {
        let mut lhs = self.postfix_term()?;
        while self.eat(&TokenKind::Star) {
            let rhs = self.postfix_term()?;
            let span = lhs.span.to(&rhs.span);
            lhs = Spanned::new(Term::Par(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn postfix_term(&mut self) -> Result<Spanned<Term>, DslError> {
        let mut t = self.atom_term()?;
        while self.eat(&TokenKind::Transpose) {
            let span = t.span.to(self.prev_span());
            t = Spanned::new(Term::Transpose(Box::new(t)), span);
        }
        Ok(t)
    }

    fn atom_term(&mut self) -> Result<Spanned<Term>, DslError> {
        let start = self.peek().span.clone();
        if self.eat(&TokenKind::LParen) {
            let inner = self.term()?;
            self.expect(TokenKind::RParen, "`)`")?;
            return Ok(inner);
        }
        let node = if let Some(b) = self.builtin_ahead() {
            self.bump();
            self.bump();
            let node = match b {
                "id" => Term::Id(self.obj()?),
                "swap" => {
                    let x = self.obj()?;
                    self.expect(TokenKind::Comma, "`,`")?;
                    Term::Swap(x, self.obj()?)
                }
                "copy" => Term::Copy(self.obj()?),
                "discard" => Term::Discard(self.obj()?),
                "match" => Term::Match(self.obj()?),
                "unit" => Term::Unit(self.obj()?),
                "state" => Term::State(self.ident()?),
                "test" => Term::Test(self.ident()?),
                _ => unreachable!("builtin list"),
            };
            self.expect(TokenKind::RParen, "`)`")?;
            node
        } else if matches!(self.peek().kind, TokenKind::Ident(_)) {
            Term::Name(self.ident()?.node)
        } else {
            return self.error(&["identifier", "builtin", "`(`"]);
        };
        Ok(Spanned::new(node, start.to(self.prev_span())))
    }

    fn proc_term(&mut self) -> Result<Spanned<ProcTerm>, DslError> {
        let mut lhs = self.proc_par()?;
        while self.eat(&TokenKind::Semi) {
            let rhs = self.proc_par()?;
            let span = lhs.span.to(&rhs.span);
            lhs = Spanned::new(ProcTerm::Seq(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn proc_par(&mut self) -> Result<Spanned<ProcTerm>, DslError> {
        let mut lhs = self.proc_atom()?;
        while self.eat(&TokenKind::Star) {
            let rhs = self.proc_atom()?;
            let span = lhs.span.to(&rhs.span);
            lhs = Spanned::new(ProcTerm::Par(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn proc_atom(&mut self) -> Result<Spanned<ProcTerm>, DslError> {
        let start = self.peek().span.clone();
        if self.eat(&TokenKind::LParen) {
            let inner = self.proc_term()?;
            self.expect(TokenKind::RParen, "`)`")?;
            return Ok(inner);
        }
        let node = match (&self.peek().kind, self.peek_at(1)) {
            (TokenKind::Ident(s), TokenKind::LParen) if s == "id" => {
                self.bump();
                self.bump();
                let x = self.obj()?;
                self.expect(TokenKind::RParen, "`)`")?;
                ProcTerm::Id(x)
            }
            (TokenKind::Ident(s), TokenKind::LParen) if s == "swap" => {
                self.bump();
                self.bump();
                let x = self.obj()?;
                self.expect(TokenKind::Comma, "`,`")?;
                let y = self.obj()?;
                self.expect(TokenKind::RParen, "`)`")?;
                ProcTerm::Swap(x, y)
            }
            (TokenKind::Ident(_), _) => ProcTerm::Name(self.ident()?.node),
            _ => return self.error(&["identifier", "`id(`", "`swap(`", "`(`"]),
        };
        Ok(Spanned::new(node, start.to(self.prev_span())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(src: &str) -> Term {
        parse_term("t", src).unwrap().node
    }

    fn name(s: &str) -> Box<Spanned<Term>> {
        Box::new(parse_term("t", s).unwrap())
    }

    #[test]
    fn seq_binds_looser_than_par() {
        assert_eq!(
            term("A ; B * C"),
            Term::Seq(name("A"), Box::new(parse_term("t", "B * C").unwrap()))
        );
        assert_eq!(
            term("A ; B ; C"),
            Term::Seq(Box::new(parse_term("t", "A ; B").unwrap()), name("C"))
        );
    }

    #[test]
    fn transpose_is_postfix() {
        assert_eq!(
            term("(A ; B)^T"),
            Term::Transpose(Box::new(parse_term("t", "A ; B").unwrap()))
        );
        assert_eq!(
            term("A * B^T"),
            Term::Par(name("A"), Box::new(parse_term("t", "B^T").unwrap()))
        );
        assert_eq!(term("F^T^T"), Term::Transpose(name("F^T")));
    }

    #[test]
    fn builtins_and_names() {
        let t = term("swap(X * Y, I) ; copy(X) ; state(S) ; copy");
        let Term::Seq(_, last) = t else { panic!() };
        assert_eq!(last.node, Term::Name("copy".into()));
        match term("id(I * X * I)") {
            Term::Id(o) => assert_eq!(o.factors.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_codomain() {
        match parse("f.ct", "set X = {a}\nrel F : X -> = { a |-> a }") {
            Err(DslError::Parse {
                expected,
                found,
                span,
            }) => {
                assert!(expected.contains(&"identifier".to_string()));
                assert_eq!(found, "`=`");
                assert_eq!((span.line, span.column), (2, 14));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn declarations() {
        let m = parse(
            "f.ct",
            "set X = {a, b}\n\
             rel F : X -> X * X = { a |-> (a,b), b |-> (b, b) }\n\
             attr S on X = {a}\n\
             antichain W on X = {{a}, {b}}\n\
             substrate bit states X\n\
             process NOT : bit -> bit = { a |-> b, b |-> a }\n\
             process P = NOT ; id(bit) * id(I)\n\
             task T = F ; discard(X * X)\n\
             candidate C = constructor I states {*} via NOT\n\
             check possible T with C\n\
             check possible T with constructor bit states S via swap(bit, bit)\n\
             coarse F via W, W",
        )
        .unwrap();
        let kinds: Vec<&str> = m.decls.iter().map(|d| d.kind()).collect();
        assert_eq!(
            kinds,
            [
                "set",
                "rel",
                "attr",
                "antichain",
                "substrate",
                "process",
                "process",
                "task",
                "candidate",
                "check",
                "check",
                "coarse"
            ]
        );
        match &m.decls[1].node {
            Decl::Rel { maplets, .. } => assert_eq!(
                maplets[1].to.node,
                ElemLit::Tuple(vec!["b".into(), "b".into()])
            ),
            _ => panic!(),
        }
        assert_eq!(m.decls[0].span.line, 1);
        assert_eq!(m.decls[11].span.line, 12);
    }

    #[test]
    fn errors_name_expected_tokens() {
        let Err(DslError::Parse { expected, .. }) = parse("f.ct", "set X {a}") else {
            panic!()
        };
        assert_eq!(expected, ["`=`"]);
        let Err(DslError::Parse { expected, .. }) = parse("f.ct", "set X = {a b}") else {
            panic!()
        };
        assert_eq!(expected, ["`,`", "`}`"]);
        assert!(parse("f.ct", "frob").is_err());
        assert!(parse_term("t", "A ;").is_err());
        assert!(parse_term("t", "(A").is_err());
    }

    #[test]
    fn antichain_literals() {
        assert_eq!(
            parse_antichain_literal("arg", "{{a}, {b, c}}")
                .unwrap()
                .len(),
            2
        );
        assert!(parse_antichain_literal("arg", "{{a}, {b").is_err());
        assert!(parse_antichain_literal("arg", "{a}}").is_err());
    }
}
