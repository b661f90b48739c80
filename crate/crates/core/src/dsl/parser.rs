use crate::duality::MateSide;
use crate::linalg::{RatMatrix, Rational};

use super::ast::{Arg, ArgValue, Call, Grid, Ident, ObjRef, Options, Override, Pos, Sort, Statement};
use super::lexer::{tokenize, Tok, Token};
use super::SpecError;

/// Parses spec text into statements without resolving any names.
pub fn parse_statements(text: &str) -> Result<Vec<Statement>, SpecError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let mut out = Vec::new();
    loop {
        while p.peek() == &Tok::Newline {
            p.at += 1;
        }
        if p.peek() == &Tok::Eof {
            return Ok(out);
        }
        out.push(p.statement()?);
        match p.peek() {
            Tok::Newline | Tok::Eof => {}
            other => {
                let msg = format!("expected end of line, found {}", other.describe());
                return Err(p.error(msg));
            }
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> SpecError {
        SpecError::at(self.pos(), msg)
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, SpecError> {
        if *self.peek() == tok {
            Ok(self.next().pos)
        } else {
            Err(self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<Ident, SpecError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.next().pos;
                Ok(Ident { name, pos })
            }
            other => Err(self.error(format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SpecError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            other => Err(self.error(format!("expected `{kw}`, found {}", other.describe()))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn usize(&mut self, what: &str) -> Result<usize, SpecError> {
        match self.peek().clone() {
            Tok::Int(digits) => {
                let pos = self.pos();
                self.next();
                digits
                    .parse()
                    .map_err(|_| SpecError::at(pos, format!("{what} `{digits}` is too large")))
            }
            other => Err(self.error(format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn statement(&mut self) -> Result<Statement, SpecError> {
        let kw = self.ident("a statement keyword")?;
        match kw.name.as_str() {
            "matrix" => self.matrix_decl(),
            "check" => self.check(),
            "transport" => self.transport(),
            "tensor" => {
                let (left, right) = (self.ident("a functor name")?, self.ident("a functor name")?);
                self.keyword("as")?;
                let bind = self.ident("a name to bind")?;
                Ok(Statement::Tensor { left, right, bind })
            }
            "compose" => {
                let (outer, inner) = (self.ident("a functor name")?, self.ident("a functor name")?);
                self.keyword("as")?;
                let bind = self.ident("a name to bind")?;
                Ok(Statement::Compose { outer, inner, bind })
            }
            other => match Sort::from_keyword(other) {
                Some(sort) => self.decl(sort),
                None => Err(SpecError::at(kw.pos, format!("unknown statement `{other}`"))),
            },
        }
    }

    fn matrix_decl(&mut self) -> Result<Statement, SpecError> {
        let name = self.ident("a matrix name")?;
        let (rows, cols) = match self.peek().clone() {
            Tok::Shape(r, c) => {
                self.next();
                (r, c)
            }
            other => return Err(self.error(format!("expected a shape like `2x3`, found {}", other.describe()))),
        };
        self.expect(Tok::Eq)?;
        let value = self.matrix_literal(Some((rows, cols)))?;
        Ok(Statement::Matrix { name, value })
    }

    /// `[r; r; …]`. With a declared shape every row must have the declared
    /// arity; without one the rows must agree with each other.
    fn matrix_literal(&mut self, shape: Option<(usize, usize)>) -> Result<RatMatrix, SpecError> {
        let open = self.expect(Tok::LBracket)?;
        let mut rows: Vec<(Pos, Vec<Rational>)> = Vec::new();
        let mut row_pos = self.pos();
        let mut row = Vec::new();
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.next();
                    rows.push((row_pos, std::mem::take(&mut row)));
                    row_pos = self.pos();
                }
                Tok::RBracket => {
                    self.next();
                    rows.push((row_pos, row));
                    break;
                }
                _ => row.push(self.rational()?),
            }
        }
        if rows.len() == 1 && rows[0].1.is_empty() && shape.map_or(true, |(r, _)| r == 0) {
            rows.clear();
        }
        let (n_rows, n_cols) = match shape {
            Some(s) => s,
            None => (rows.len(), rows.first().map_or(0, |r| r.1.len())),
        };
        if rows.len() != n_rows {
            return Err(SpecError::at(
                open,
                format!("matrix literal has {} rows, expected {n_rows}", rows.len()),
            ));
        }
        for (i, (pos, r)) in rows.iter().enumerate() {
            if r.len() != n_cols {
                return Err(SpecError::at(
                    *pos,
                    format!("row {} has {} entries, expected {n_cols}", i + 1, r.len()),
                ));
            }
        }
        let data = rows.into_iter().flat_map(|(_, r)| r).collect();
        RatMatrix::new(n_rows, n_cols, data).map_err(|e| SpecError::at(open, e.to_string()))
    }

    /// `[-]digits[/digits]`
    fn rational(&mut self) -> Result<Rational, SpecError> {
        let pos = self.pos();
        let mut text = String::new();
        if self.peek() == &Tok::Minus {
            self.next();
            text.push('-');
        }
        match self.peek().clone() {
            Tok::Int(d) => {
                self.next();
                text.push_str(&d);
            }
            other => return Err(self.error(format!("expected a number, found {}", other.describe()))),
        }
        if self.peek() == &Tok::Slash {
            self.next();
            match self.peek().clone() {
                Tok::Int(d) => {
                    self.next();
                    text.push('/');
                    text.push_str(&d);
                }
                other => return Err(self.error(format!("expected a denominator, found {}", other.describe()))),
            }
        }
        text.parse().map_err(|e: crate::FrobError| SpecError::at(pos, e.to_string()))
    }

    fn decl(&mut self, sort: Sort) -> Result<Statement, SpecError> {
        let name = self.ident("a name")?;
        self.expect(Tok::Eq)?;
        let expr = self.call()?;
        let mut overrides = Vec::new();
        if self.at_keyword("with") {
            self.next();
            loop {
                overrides.push(self.override_item()?);
                if self.peek() != &Tok::Comma {
                    break;
                }
                self.next();
            }
        }
        Ok(Statement::Decl {
            sort,
            name,
            expr,
            overrides,
        })
    }

    fn call(&mut self) -> Result<Call, SpecError> {
        let head = self.ident("a constructor")?;
        let mut args = Vec::new();
        if self.peek() == &Tok::LParen {
            self.next();
            if self.peek() != &Tok::RParen {
                loop {
                    args.push(self.arg()?);
                    if self.peek() != &Tok::Comma {
                        break;
                    }
                    self.next();
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok(Call { head, args })
    }

    fn arg(&mut self) -> Result<Arg, SpecError> {
        let pos = self.pos();
        let value = match self.peek() {
            Tok::LBracket => ArgValue::Matrix(self.matrix_literal(None)?),
            Tok::Minus | Tok::Int(_) => ArgValue::Number(self.rational()?),
            Tok::Ident(_) => ArgValue::Name(self.ident("an argument")?.name),
            other => return Err(self.error(format!("expected an argument, found {}", other.describe()))),
        };
        Ok(Arg { value, pos })
    }

    fn override_item(&mut self) -> Result<Override, SpecError> {
        let field = self.ident("a field name")?;
        let objects = if self.peek() == &Tok::LParen {
            self.next();
            let a = self.obj_ref()?;
            self.expect(Tok::Comma)?;
            let b = self.obj_ref()?;
            self.expect(Tok::RParen)?;
            Some((a, b))
        } else {
            None
        };
        self.expect(Tok::Eq)?;
        let value = self.arg()?;
        Ok(Override { field, objects, value })
    }

    fn obj_ref(&mut self) -> Result<ObjRef, SpecError> {
        if self.peek() == &Tok::Star {
            self.next();
            return Ok(ObjRef::Star);
        }
        Ok(ObjRef::Dim(self.usize("an object dimension or `*`")?))
    }

    fn check(&mut self) -> Result<Statement, SpecError> {
        let verb = self.ident("a check name")?;
        let mut args = Vec::new();
        while let Tok::Ident(s) = self.peek() {
            if s == "grid" || s == "side" {
                break;
            }
            args.push(self.ident("an argument")?);
        }
        let options = self.options()?;
        Ok(Statement::Check { verb, args, options })
    }

    fn transport(&mut self) -> Result<Statement, SpecError> {
        let dual = self.ident("a dual situation name")?;
        self.keyword("via")?;
        let via = self.ident("a functor name")?;
        let bind = if self.at_keyword("as") {
            self.next();
            Some(self.ident("a name to bind")?)
        } else {
            None
        };
        let options = self.options()?;
        Ok(Statement::Transport {
            dual,
            via,
            bind,
            options,
        })
    }

    fn options(&mut self) -> Result<Options, SpecError> {
        let mut opts = Options::default();
        loop {
            let pos = self.pos();
            if self.at_keyword("grid") {
                self.next();
                if opts.grid.is_some() {
                    return Err(SpecError::at(pos, "`grid` given twice"));
                }
                let lo = self.usize("a grid bound")?;
                self.expect(Tok::DotDot)?;
                let hi = self.usize("a grid bound")?;
                if lo > hi {
                    return Err(SpecError::at(pos, format!("grid {lo}..{hi} is empty")));
                }
                opts.grid = Some(Grid { lo, hi, pos });
            } else if self.at_keyword("side") {
                self.next();
                if opts.side.is_some() {
                    return Err(SpecError::at(pos, "`side` given twice"));
                }
                let s = self.ident("`left` or `right`")?;
                let side = match s.name.as_str() {
                    "left" => MateSide::Left,
                    "right" => MateSide::Right,
                    other => return Err(SpecError::at(s.pos, format!("side must be `left` or `right`, not `{other}`"))),
                };
                opts.side = Some((side, pos));
            } else {
                return Ok(opts);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(text: &str) -> Statement {
        let mut s = parse_statements(text).unwrap();
        assert_eq!(s.len(), 1);
        s.pop().unwrap()
    }

    #[test]
    fn matrix_declaration() {
        let Statement::Matrix { name, value } = one("matrix e 1x4 = [1 0 0 1]") else {
            panic!()
        };
        assert_eq!(name.name, "e");
        assert_eq!(value, RatMatrix::from_ints(&[[1, 0, 0, 1]]));
    }

    #[test]
    fn row_arity_error_points_at_the_row() {
        let e = parse_statements("matrix m 2x2 = [1 0; 1]").unwrap_err();
        assert_eq!((e.line, e.col), (1, 22));
        assert!(e.message.contains("row 2"), "{}", e.message);
    }

    #[test]
    fn rationals_are_exact() {
        let Statement::Matrix { value, .. } = one("matrix q 1x2 = [-3/7 4/2]") else {
            panic!()
        };
        assert_eq!(value.get(0, 0), &Rational::new(-3, 7).unwrap());
        assert_eq!(value.get(0, 1), &Rational::from_integer(2));
    }

    #[test]
    fn empty_shapes() {
        let Statement::Matrix { value, .. } = one("matrix z 0x3 = []") else { panic!() };
        assert_eq!(value.shape(), (0, 3));
        let Statement::Matrix { value, .. } = one("matrix z 2x0 = [;]") else { panic!() };
        assert_eq!(value.shape(), (2, 0));
    }

    #[test]
    fn declaration_with_overrides() {
        let s = one("functor F = tensor_left(R) with r(1,1) = m, i0 = [1 2]");
        let Statement::Decl { sort, overrides, .. } = &s else { panic!() };
        assert_eq!(*sort, Sort::Functor);
        assert_eq!(overrides.len(), 2);
        assert_eq!(overrides[0].objects, Some((ObjRef::Dim(1), ObjRef::Dim(1))));
        assert_eq!(s.to_string(), "functor F = tensor_left(R) with r(1,1) = m, i0 = [1 2]");
    }

    #[test]
    fn check_with_options() {
        let s = one("check mate T D side right grid 1..2");
        assert_eq!(s.to_string(), "check mate T D grid 1..2 side right");
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse_statements("# header\n\nbase B = zmod(2) # trailing\n\ncheck convolution F\n").unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_statements("base B = zmod(2)\nfrobalg = zmod(2)").unwrap_err();
        assert_eq!((e.line, e.col), (2, 9));
        let e = parse_statements("check frobenius F grid 3..1").unwrap_err();
        assert_eq!((e.line, e.col), (1, 19));
        let e = parse_statements("frobnicate X").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
    }

    #[test]
    fn multiline_literal() {
        let s = parse_statements("matrix m 2x2 = [1 0;\n  0 1]\ncheck frobalg R").unwrap();
        assert_eq!(s.len(), 2);
    }
}
