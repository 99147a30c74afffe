use thiserror::Error;

use super::ast::{self, Const, Formula, Var};

/// Grammar, lowest precedence first:
///
/// ```text
/// formula := quant | impl
/// quant   := ("E" | "A") var "." formula
/// impl    := disj ("->" formula)?          right associative
/// disj    := conj ("|" conj)*
/// conj    := neg ("&" neg)*
/// neg     := "~" neg | atom | "(" formula ")"
/// atom    := var ("in" | "=") (var | "0")
/// ```
///
/// Quantifiers bind as far right as possible, so `E x. p in x & q in x`
/// quantifies the whole conjunction. A quantifier may not appear bare as an
/// operand of `&`, `|`, `->`, or `~`; parenthesize it.
#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    /// Permit `0` on the right of `=`. Off for translator input, on for the
    /// formulas the translator itself emits.
    pub allow_const: bool,
    /// Permit `_g*` names. Off for user input so the fresh supply can never
    /// collide with it; on when re-reading translator output.
    pub allow_generated: bool,
}

impl Default for ParseOptions {
    fn default() -> ParseOptions {
        ParseOptions {
            allow_const: true,
            allow_generated: false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: unexpected character {found:?}")]
    BadChar { line: u32, col: u32, found: char },
    #[error("{line}:{col}: variable names may not start with a digit: {name:?}")]
    DigitName { line: u32, col: u32, name: String },
    #[error("{line}:{col}: {name:?} is reserved and cannot be a variable")]
    ReservedName { line: u32, col: u32, name: String },
    #[error("{line}:{col}: names starting with \"_g\" are reserved for generated variables")]
    GeneratedName { line: u32, col: u32 },
    #[error("{line}:{col}: expected {expected}, found {found}")]
    Expected {
        line: u32,
        col: u32,
        expected: &'static str,
        found: String,
    },
    #[error("{line}:{col}: the constant 0 is not allowed here")]
    ConstNotAllowed { line: u32, col: u32 },
    #[error("{line}:{col}: input continues after a complete formula")]
    TrailingInput { line: u32, col: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    KwExists,
    KwForall,
    KwIn,
    Zero,
    Dot,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    Equals,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("{s:?}"),
            Tok::KwExists => "\"E\"".into(),
            Tok::KwForall => "\"A\"".into(),
            Tok::KwIn => "\"in\"".into(),
            Tok::Zero => "\"0\"".into(),
            Tok::Dot => "\".\"".into(),
            Tok::Tilde => "\"~\"".into(),
            Tok::Amp => "\"&\"".into(),
            Tok::Pipe => "\"|\"".into(),
            Tok::Arrow => "\"->\"".into(),
            Tok::Equals => "\"=\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn next_tok(&mut self) -> Result<(Tok, u32, u32), ParseError> {
        while matches!(self.peek_char(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let Some(c) = self.peek_char() else {
            return Ok((Tok::Eof, line, col));
        };
        let tok = match c {
            '.' => {
                self.bump();
                Tok::Dot
            }
            '~' => {
                self.bump();
                Tok::Tilde
            }
            '&' => {
                self.bump();
                Tok::Amp
            }
            '|' => {
                self.bump();
                Tok::Pipe
            }
            '=' => {
                self.bump();
                Tok::Equals
            }
            '(' => {
                self.bump();
                Tok::LParen
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            '-' => {
                self.bump();
                if self.peek_char() == Some('>') {
                    self.bump();
                    Tok::Arrow
                } else {
                    return Err(ParseError::BadChar {
                        line,
                        col,
                        found: '-',
                    });
                }
            }
            '0' => {
                self.bump();
                // A lone 0 is the constant; 0 followed by a name char is a
                // malformed identifier.
                if matches!(self.peek_char(), Some(c) if is_name_char(c)) {
                    let mut name = String::from("0");
                    while let Some(c) = self.peek_char() {
                        if !is_name_char(c) {
                            break;
                        }
                        name.push(c);
                        self.bump();
                    }
                    return Err(ParseError::DigitName { line, col, name });
                }
                Tok::Zero
            }
            c if c.is_ascii_digit() => {
                let mut name = String::new();
                while let Some(c) = self.peek_char() {
                    if !is_name_char(c) {
                        break;
                    }
                    name.push(c);
                    self.bump();
                }
                return Err(ParseError::DigitName { line, col, name });
            }
            c if is_name_char(c) => {
                let mut name = String::new();
                while let Some(c) = self.peek_char() {
                    if !is_name_char(c) {
                        break;
                    }
                    name.push(c);
                    self.bump();
                }
                match name.as_str() {
                    "E" => Tok::KwExists,
                    "A" => Tok::KwForall,
                    "in" => Tok::KwIn,
                    _ => Tok::Ident(name),
                }
            }
            other => {
                return Err(ParseError::BadChar {
                    line,
                    col,
                    found: other,
                })
            }
        };
        Ok((tok, line, col))
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    line: u32,
    col: u32,
    opts: ParseOptions,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, opts: ParseOptions) -> Result<Parser<'a>, ParseError> {
        let mut lexer = Lexer::new(src);
        let (tok, line, col) = lexer.next_tok()?;
        Ok(Parser {
            lexer,
            tok,
            line,
            col,
            opts,
        })
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        let (tok, line, col) = self.lexer.next_tok()?;
        self.tok = tok;
        self.line = line;
        self.col = col;
        Ok(())
    }

    fn expected(&self, expected: &'static str) -> ParseError {
        ParseError::Expected {
            line: self.line,
            col: self.col,
            expected,
            found: self.tok.describe(),
        }
    }

    fn eat(&mut self, want: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.tok == want {
            self.advance()
        } else {
            Err(self.expected(expected))
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        let (line, col) = (self.line, self.col);
        match &self.tok {
            Tok::Ident(name) => {
                let name = name.clone();
                self.advance()?;
                if name.starts_with("_g") && !self.opts.allow_generated {
                    return Err(ParseError::GeneratedName { line, col });
                }
                Ok(Var::new(name))
            }
            Tok::KwExists | Tok::KwForall | Tok::KwIn => {
                let name = match self.tok {
                    Tok::KwExists => "E",
                    Tok::KwForall => "A",
                    _ => "in",
                };
                Err(ParseError::ReservedName {
                    line,
                    col,
                    name: name.into(),
                })
            }
            _ => Err(self.expected("a variable")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.tok {
            Tok::KwExists | Tok::KwForall => self.quantified(),
            _ => self.implication(),
        }
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        let is_exists = self.tok == Tok::KwExists;
        self.advance()?;
        let v = self.var()?;
        self.eat(Tok::Dot, "\".\" after the quantified variable")?;
        let body = self.formula()?;
        Ok(if is_exists {
            ast::exists(v, body)
        } else {
            ast::forall(v, body)
        })
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.tok == Tok::Arrow {
            self.advance()?;
            let rhs = self.formula()?;
            Ok(ast::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.tok == Tok::Pipe {
            self.advance()?;
            acc = ast::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.negation()?;
        while self.tok == Tok::Amp {
            self.advance()?;
            acc = ast::and(acc, self.negation()?);
        }
        Ok(acc)
    }

    fn negation(&mut self) -> Result<Formula, ParseError> {
        match self.tok {
            Tok::Tilde => {
                self.advance()?;
                Ok(ast::not(self.negation()?))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.formula()?;
                self.eat(Tok::RParen, "\")\"")?;
                Ok(inner)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let lhs = match &self.tok {
            Tok::Ident(_) => self.var()?,
            Tok::KwExists | Tok::KwForall | Tok::KwIn => {
                let name = match &self.tok {
                    Tok::KwExists => "E",
                    Tok::KwForall => "A",
                    _ => "in",
                };
                return Err(ParseError::ReservedName {
                    line: self.line,
                    col: self.col,
                    name: name.into(),
                });
            }
            _ => return Err(self.expected("a formula")),
        };
        match self.tok {
            Tok::KwIn => {
                self.advance()?;
                let rhs = self.var()?;
                Ok(Formula::Mem(lhs, rhs))
            }
            Tok::Equals => {
                self.advance()?;
                if self.tok == Tok::Zero {
                    let (line, col) = (self.line, self.col);
                    self.advance()?;
                    if !self.opts.allow_const {
                        return Err(ParseError::ConstNotAllowed { line, col });
                    }
                    Ok(Formula::EqConst(lhs, Const::Zero))
                } else {
                    let rhs = self.var()?;
                    Ok(Formula::Eq(lhs, rhs))
                }
            }
            _ => Err(self.expected("\"in\" or \"=\"")),
        }
    }
}

/// Parse with the default options (constant `0` allowed).
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    parse_with(src, ParseOptions::default())
}

pub fn parse_with(src: &str, opts: ParseOptions) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src, opts)?;
    let f = p.formula()?;
    if p.tok != Tok::Eof {
        return Err(ParseError::TrailingInput {
            line: p.line,
            col: p.col,
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ast::{and, eq, eq_zero, exists, forall, implies, mem, not, or};

    #[test]
    fn atoms_and_connectives() {
        assert_eq!(parse("x in y").unwrap(), mem("x", "y"));
        assert_eq!(parse("x = y").unwrap(), eq("x", "y"));
        assert_eq!(parse("x = 0").unwrap(), eq_zero("x"));
        assert_eq!(
            parse("x in y & z in y").unwrap(),
            and(mem("x", "y"), mem("z", "y"))
        );
        assert_eq!(
            parse("a in b | c in d").unwrap(),
            or(mem("a", "b"), mem("c", "d"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // & binds tighter than |, | tighter than ->, -> right associative.
        assert_eq!(
            parse("a in b & c in d | e in f").unwrap(),
            or(and(mem("a", "b"), mem("c", "d")), mem("e", "f"))
        );
        assert_eq!(
            parse("a in b -> c in d -> e in f").unwrap(),
            implies(mem("a", "b"), implies(mem("c", "d"), mem("e", "f")))
        );
    }

    #[test]
    fn quantifier_scopes_to_the_right() {
        assert_eq!(
            parse("E x. x in y & y in x").unwrap(),
            exists("x", and(mem("x", "y"), mem("y", "x")))
        );
        assert_eq!(
            parse("A z. z in y -> z = x").unwrap(),
            forall("z", implies(mem("z", "y"), eq("z", "x")))
        );
    }

    #[test]
    fn negation_and_parens() {
        assert_eq!(parse("~x in y").unwrap(), not(mem("x", "y")));
        assert_eq!(parse("~~x = y").unwrap(), not(not(eq("x", "y"))));
        assert_eq!(
            parse("~(x in y & y in x)").unwrap(),
            not(and(mem("x", "y"), mem("y", "x")))
        );
        assert_eq!(
            parse("(E w. w in y) & x in y").unwrap(),
            and(exists("w", mem("w", "y")), mem("x", "y"))
        );
    }

    #[test]
    fn bare_quantifier_inside_connective_is_rejected() {
        // A quantifier operand of & must be parenthesized, even when an
        // outer quantifier is in scope.
        assert!(parse("E w. w in y & (E v. v in w)").is_ok());
        assert!(matches!(
            parse("E w. w in y & E v. v in w"),
            Err(ParseError::ReservedName { .. })
        ));
        assert!(matches!(
            parse("x in y & E v. v in y"),
            Err(ParseError::ReservedName { .. })
        ));
    }

    #[test]
    fn const_gating() {
        let no_const = ParseOptions {
            allow_const: false,
            ..ParseOptions::default()
        };
        assert!(matches!(
            parse_with("x = 0", no_const),
            Err(ParseError::ConstNotAllowed { .. })
        ));
        assert!(parse_with("x = y", no_const).is_ok());
        // 0 is never legal on the left or in membership.
        assert!(parse("0 in x").is_err());
        assert!(parse("x in 0").is_err());
    }

    #[test]
    fn name_rules() {
        assert!(matches!(
            parse("_g1 in y"),
            Err(ParseError::GeneratedName { .. })
        ));
        let relaxed = ParseOptions {
            allow_generated: true,
            ..ParseOptions::default()
        };
        assert_eq!(parse_with("_g1 in y", relaxed).unwrap(), mem("_g1", "y"));
        assert!(matches!(
            parse("1x in y"),
            Err(ParseError::DigitName { .. })
        ));
        assert!(matches!(
            parse("in in y"),
            Err(ParseError::ReservedName { .. })
        ));
        assert!(parse("x' in y''").is_ok());
    }

    #[test]
    fn error_positions() {
        let err = parse("x in\ny &").unwrap_err();
        match err {
            ParseError::Expected { line, col, .. } => {
                assert_eq!(line, 2);
                assert!(col >= 4);
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            parse("x in y y"),
            Err(ParseError::TrailingInput { .. })
        ));
    }
}
