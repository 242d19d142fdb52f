//! Parser for the textual term grammar.
//!
//! ```text
//! input    := term ('@' NAT)?
//! term     := (lambda | appchain) tail*
//! lambda   := '\' '.' (lambda | appchain)
//! appchain := atom+                      (left associated application)
//! atom     := 'x' NAT | IDENT | '(' term ')'
//! tail     := '[' term (',' term)* ']'
//! ```
//!
//! Variables are `x1, x2, ..` counted from the outermost binder. A bare
//! identifier is an opaque atom. Substitution tails attach to the whole
//! preceding lambda or application chain; to substitute on a single
//! atom, parenthesize it, as in `(x1[a]) x2`. When the `@n` scope suffix is omitted the smallest
//! scope that closes the term is inferred.

use lamth_core::{Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Var(usize),
    Ident(String),
    App(Box<Ast>, Box<Ast>),
    Lam(Box<Ast>),
    Subst(Box<Ast>, Vec<Ast>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Ident(String),
    Lambda,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    At(usize),
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError(format!("expected a number at byte {}", start)));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError("number too large".into()))
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        match c {
            b'\\' => {
                self.pos += 1;
                self.skip_ws();
                if self.pos < self.src.len() && self.src[self.pos] == b'.' {
                    self.pos += 1;
                    Ok(Tok::Lambda)
                } else {
                    Err(ParseError(format!("expected '.' after '\\' at byte {}", self.pos)))
                }
            }
            b'(' => {
                self.pos += 1;
                Ok(Tok::LParen)
            }
            b')' => {
                self.pos += 1;
                Ok(Tok::RParen)
            }
            b'[' => {
                self.pos += 1;
                Ok(Tok::LBracket)
            }
            b']' => {
                self.pos += 1;
                Ok(Tok::RBracket)
            }
            b',' => {
                self.pos += 1;
                Ok(Tok::Comma)
            }
            b'@' => {
                self.pos += 1;
                self.skip_ws();
                Ok(Tok::At(self.nat()?))
            }
            b'x' if self.pos + 1 < self.src.len() && self.src[self.pos + 1].is_ascii_digit() => {
                self.pos += 1;
                Ok(Tok::Var(self.nat()?))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Tok::Ident(
                    std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string(),
                ))
            }
            other => Err(ParseError(format!(
                "unexpected character '{}' at byte {}",
                other as char, self.pos
            ))),
        }
    }

    fn peek(&mut self) -> Result<Tok, ParseError> {
        let save = self.pos;
        let t = self.next()?;
        self.pos = save;
        Ok(t)
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
}

impl<'a> Parser<'a> {
    fn tails(&mut self, mut head: Ast) -> Result<Ast, ParseError> {
        while self.lex.peek()? == Tok::LBracket {
            self.lex.next()?;
            let mut args = vec![self.term()?];
            loop {
                match self.lex.next()? {
                    Tok::Comma => args.push(self.term()?),
                    Tok::RBracket => break,
                    t => return Err(ParseError(format!("expected ',' or ']', found {:?}", t))),
                }
            }
            head = Ast::Subst(Box::new(head), args);
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<Option<Ast>, ParseError> {
        let head = match self.lex.peek()? {
            Tok::Var(i) => {
                self.lex.next()?;
                Ast::Var(i)
            }
            Tok::Ident(name) => {
                self.lex.next()?;
                Ast::Ident(name)
            }
            Tok::LParen => {
                self.lex.next()?;
                let inner = self.term()?;
                match self.lex.next()? {
                    Tok::RParen => inner,
                    t => return Err(ParseError(format!("expected ')', found {:?}", t))),
                }
            }
            _ => return Ok(None),
        };
        Ok(Some(head))
    }

    /// A lambda or an application chain, without outer substitution tails.
    fn prefix(&mut self) -> Result<Ast, ParseError> {
        if self.lex.peek()? == Tok::Lambda {
            self.lex.next()?;
            let body = self.prefix()?;
            return Ok(Ast::Lam(Box::new(body)));
        }
        let mut acc = match self.atom()? {
            Some(a) => a,
            None => {
                return Err(ParseError(format!("expected a term, found {:?}", self.lex.peek()?)))
            }
        };
        while let Some(next) = self.atom()? {
            acc = Ast::App(Box::new(acc), Box::new(next));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let head = self.prefix()?;
        self.tails(head)
    }
}

/// Smallest top-level scope under which the tree can close. Substitution
/// subjects live in their own scope given by the argument count, so they
/// do not contribute.
fn min_scope(ast: &Ast) -> usize {
    match ast {
        Ast::Var(i) => *i,
        Ast::Ident(_) => 0,
        Ast::App(f, a) => min_scope(f).max(min_scope(a)),
        Ast::Lam(b) => min_scope(b).saturating_sub(1),
        Ast::Subst(_, args) => args.iter().map(min_scope).max().unwrap_or(0),
    }
}

fn build(ast: &Ast, n: usize) -> Result<Term, TermError> {
    match ast {
        Ast::Var(i) => Term::var(n, *i),
        Ast::Ident(name) => Ok(Term::meta(name, n)),
        Ast::App(f, a) => Term::app(build(f, n)?, build(a, n)?),
        Ast::Lam(b) => Term::abs(build(b, n + 1)?),
        Ast::Subst(subject, args) => {
            let subject = build(subject, args.len())?;
            let args = args.iter().map(|a| build(a, n)).collect::<Result<Vec<_>, _>>()?;
            Term::subst(subject, args, n)
        }
    }
}

/// Parse a full input, honoring an optional `@n` scope suffix.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser { lex: Lexer::new(src) };
    let ast = p.term()?;
    let scope = match p.lex.next()? {
        Tok::End => min_scope(&ast),
        Tok::At(n) => {
            match p.lex.next()? {
                Tok::End => {}
                t => return Err(ParseError(format!("trailing input after scope: {:?}", t))),
            }
            n
        }
        t => return Err(ParseError(format!("trailing input: {:?}", t))),
    };
    build(&ast, scope).map_err(|e| ParseError(format!("ill-scoped term: {:?}", e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrips_renderer_output() {
        for src in [
            "\\.x4 (x1 x2 (x1 x3)) @3",
            "(\\.x1)[f]",
            "x1 x2 @2",
            "\\.(x1[x2 x2]) @1",
            "\\.\\.x2 x1 @0",
        ] {
            let t = parse_term(src).unwrap();
            let back = parse_term(&t.render_scoped()).unwrap();
            assert_eq!(t, back, "{}", src);
        }
    }

    #[test]
    fn lambda_tail_applies_to_whole_lambda() {
        let t = parse_term("\\.x5 (x1 x2 (x4 x3)) [x1,x2,x3,x1] @3").unwrap();
        assert_eq!(t.scope(), 3);
        assert!(matches!(t.node(), lamth_core::term::Node::Subst(_, args) if args.len() == 4));
    }

    #[test]
    fn minimal_scope_is_inferred() {
        assert_eq!(parse_term("x1 x3").unwrap().scope(), 3);
        assert_eq!(parse_term("\\.x1").unwrap().scope(), 0);
        assert_eq!(parse_term("\\.x2").unwrap().scope(), 1);
        assert_eq!(parse_term("f").unwrap().scope(), 0);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_term("").is_err());
        assert!(parse_term("x0 @1").is_err());
        assert!(parse_term("x2 @1").is_err());
        assert!(parse_term("\\x1").is_err());
        assert!(parse_term("(x1").is_err());
        assert!(parse_term("x1 ]").is_err());
    }
}
