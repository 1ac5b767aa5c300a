use crate::error::{FrontendError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Wedge,
    Slash,
    Pow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Quote,
    Eq,
    End,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    /// 1-based column of the first character.
    pub column: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let column = k + 1;
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push(Token {
                tok: Tok::Num(chars[start..k].iter().collect()),
                column,
            });
            continue;
        }
        if ch.is_alphabetic() {
            let mut ident = String::new();
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                ident.push(chars[k]);
                k += 1;
                if ident.ends_with('_') && k < chars.len() && chars[k] == '{' {
                    while k < chars.len() && chars[k] != '}' {
                        ident.push(chars[k]);
                        k += 1;
                    }
                    if k == chars.len() {
                        return Err(FrontendError::parse(1, column, "unterminated jet index"));
                    }
                    ident.push('}');
                    k += 1;
                }
            }
            out.push(Token {
                tok: Tok::Ident(ident),
                column,
            });
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' if chars.get(k + 1) == Some(&'*') => {
                k += 1;
                Tok::Pow
            }
            '*' => Tok::Star,
            '^' => Tok::Wedge,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '\'' => Tok::Quote,
            '=' => Tok::Eq,
            other => {
                return Err(FrontendError::parse(
                    1,
                    column,
                    format!("unexpected character '{other}'"),
                ))
            }
        };
        k += 1;
        out.push(Token { tok, column });
    }
    out.push(Token {
        tok: Tok::End,
        column: chars.len() + 1,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jets_and_powers() {
        let toks: Vec<Tok> = tokenize("phi_{t,x}**2 ^ del(q_t)")
            .unwrap()
            .into_iter()
            .map(|t| t.tok)
            .collect();
        assert_eq!(toks[0], Tok::Ident("phi_{t,x}".into()));
        assert_eq!(toks[1], Tok::Pow);
        assert_eq!(toks[3], Tok::Wedge);
        assert_eq!(toks[6], Tok::Ident("q_t".into()));
    }

    #[test]
    fn bad_character_has_column() {
        match tokenize("phi + $") {
            Err(FrontendError::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
    }
}
