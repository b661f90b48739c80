use super::ast::Pos;
use super::SpecError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    /// Unsigned decimal digits, kept as text so large literals survive.
    Int(String),
    /// `RxC`
    Shape(usize, usize),
    Minus,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Eq,
    DotDot,
    Star,
    Newline,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Shape(r, c) => format!("shape `{r}x{c}`"),
            Tok::Minus => "`-`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::DotDot => "`..`".into(),
            Tok::Star => "`*`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits spec text into tokens. `#` starts a comment; line breaks inside
/// brackets or parentheses are ignored so long literals can wrap.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, SpecError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut depth = 0usize;

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let mut advance = 1;
        let tok = match c {
            '\n' => {
                let t = (depth == 0).then_some(Tok::Newline);
                i += 1;
                line += 1;
                col = 1;
                if let Some(t) = t {
                    out.push(Token { tok: t, pos });
                }
                continue;
            }
            c if c.is_whitespace() => None,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                    col += 1;
                }
                continue;
            }
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            '(' => {
                depth += 1;
                Some(Tok::LParen)
            }
            '[' => {
                depth += 1;
                Some(Tok::LBracket)
            }
            ')' | ']' => {
                if depth == 0 {
                    return Err(SpecError::at(pos, format!("unmatched `{c}`")));
                }
                depth -= 1;
                Some(if c == ')' { Tok::RParen } else { Tok::RBracket })
            }
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            '*' => Some(Tok::Star),
            '.' if chars.get(i + 1) == Some(&'.') => {
                advance = 2;
                Some(Tok::DotDot)
            }
            c if c.is_ascii_digit() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[start..j].iter().collect();
                let shape_cols = (chars.get(j) == Some(&'x'))
                    .then(|| {
                        let mut k = j + 1;
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        (k > j + 1).then_some(k)
                    })
                    .flatten();
                if let Some(k) = shape_cols {
                    let cols: String = chars[j + 1..k].iter().collect();
                    let parse = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|_| SpecError::at(pos, format!("shape component `{s}` is too large")))
                    };
                    advance = k - start;
                    Some(Tok::Shape(parse(&digits)?, parse(&cols)?))
                } else {
                    advance = j - start;
                    Some(Tok::Int(digits))
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                advance = j - start;
                Some(Tok::Ident(chars[start..j].iter().collect()))
            }
            other => return Err(SpecError::at(pos, format!("unexpected character `{other}`"))),
        };
        if let Some(tok) = tok {
            out.push(Token { tok, pos });
        }
        i += advance;
        col += advance;
    }
    if depth > 0 {
        return Err(SpecError::at(Pos { line, col }, "unclosed bracket at end of input"));
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn shapes_and_ranges() {
        assert_eq!(
            toks("2x3 1..4"),
            vec![
                Tok::Shape(2, 3),
                Tok::Int("1".into()),
                Tok::DotDot,
                Tok::Int("4".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn newlines_inside_brackets_are_dropped() {
        let t = toks("[1\n2]\nx");
        assert_eq!(t.iter().filter(|t| **t == Tok::Newline).count(), 1);
    }

    #[test]
    fn positions_count_from_one() {
        let t = tokenize("a\n  # note\n  b").unwrap();
        let b = &t[t.len() - 2];
        assert_eq!(b.tok, Tok::Ident("b".into()));
        assert_eq!((b.pos.line, b.pos.col), (3, 3));
    }

    #[test]
    fn stray_characters_are_located() {
        let e = tokenize("matrix m 1x1 = [1 ? 2]").unwrap_err();
        assert_eq!((e.line, e.col), (1, 19));
    }
}
