use thiserror::Error;

use super::token::{is_keyword, Token, TokenKind};

/// Lexical error with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("lex error at {line}:{col}: {message}")]
pub struct LexError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl LexError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        LexError { line, col, message: message.into() }
    }
}

/// Tokenizes MiniLang source into a token list ending in EOF.
///
/// Indentation is significant: INDENT/DEDENT tokens are emitted against an
/// indentation stack, Python-style. Indentation must use spaces; a tab
/// anywhere outside a string literal is a `LexError`. Comments are retained
/// as COMMENT tokens. A NEWLINE terminates every logical line, including an
/// unterminated final line.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    Lexer::new(source).run()
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    tokens: Vec<Token>,
    indents: Vec<usize>,
    at_line_start: bool,
}

impl Lexer {
    fn new(source: &str) -> Self {
        Lexer {
            chars: source.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            tokens: Vec::new(),
            indents: vec![0],
            at_line_start: true,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> LexError {
        LexError::new(self.line, self.col, message)
    }

    fn push(&mut self, kind: TokenKind, lexeme: impl Into<String>, line: usize, col: usize) {
        self.tokens.push(Token::new(kind, lexeme, line, col));
    }

    fn run(mut self) -> Result<Vec<Token>, LexError> {
        loop {
            if self.at_line_start {
                if self.peek().is_none() {
                    break;
                }
                self.start_line()?;
                continue;
            }
            match self.peek() {
                None => break,
                Some(' ') => {
                    self.bump();
                }
                Some('\n') => {
                    let (line, col) = (self.line, self.col);
                    self.bump();
                    self.push(TokenKind::Newline, "\n", line, col);
                    self.at_line_start = true;
                }
                Some('#') => self.scan_comment(),
                Some('\t') => return Err(self.error("tab character is not allowed")),
                Some(_) => self.scan_token()?,
            }
        }
        // An unterminated final line still ends in NEWLINE.
        if !self.at_line_start {
            self.push(TokenKind::Newline, "\n", self.line, self.col);
        }
        while self.indents.len() > 1 {
            self.indents.pop();
            self.push(TokenKind::Dedent, "", self.line, 1);
        }
        self.push(TokenKind::Eof, "", self.line, self.col);
        Ok(self.tokens)
    }

    /// Handles indentation at the start of a physical line. Blank lines are
    /// skipped; comment-only lines emit COMMENT without touching the
    /// indentation stack.
    fn start_line(&mut self) -> Result<(), LexError> {
        let mut width = 0usize;
        while let Some(c) = self.peek() {
            match c {
                ' ' => {
                    width += 1;
                    self.bump();
                }
                '\t' => return Err(self.error("tab in indentation")),
                _ => break,
            }
        }
        match self.peek() {
            None => return Ok(()),
            Some('\n') => {
                self.bump();
                return Ok(());
            }
            Some('#') => {
                self.scan_comment();
                if self.peek() == Some('\n') {
                    self.bump();
                }
                return Ok(());
            }
            Some(_) => {}
        }
        let current = *self.indents.last().expect("indent stack is never empty");
        if width > current {
            self.indents.push(width);
            self.push(TokenKind::Indent, "", self.line, 1);
        } else if width < current {
            while *self.indents.last().unwrap() > width {
                self.indents.pop();
                self.push(TokenKind::Dedent, "", self.line, 1);
            }
            if *self.indents.last().unwrap() != width {
                return Err(LexError::new(
                    self.line,
                    1,
                    "inconsistent dedent: indentation matches no open level",
                ));
            }
        }
        self.at_line_start = false;
        Ok(())
    }

    fn scan_comment(&mut self) {
        let (line, col) = (self.line, self.col);
        let mut lexeme = String::new();
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            lexeme.push(c);
            self.bump();
        }
        self.push(TokenKind::Comment, lexeme, line, col);
    }

    fn scan_token(&mut self) -> Result<(), LexError> {
        let c = self.peek().expect("scan_token called at EOF");
        if c.is_ascii_alphabetic() || c == '_' {
            self.scan_word();
            return Ok(());
        }
        if c.is_ascii_digit() {
            return self.scan_number();
        }
        if c == '"' || c == '\'' {
            return self.scan_string();
        }
        self.scan_operator()
    }

    fn scan_word(&mut self) {
        let (line, col) = (self.line, self.col);
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let kind = if is_keyword(&word) { TokenKind::Keyword } else { TokenKind::Ident };
        self.push(kind, word, line, col);
    }

    fn scan_number(&mut self) -> Result<(), LexError> {
        let (line, col) = (self.line, self.col);
        let mut text = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                text.push(c);
                self.bump();
            } else {
                break;
            }
        }
        // A float needs digits on both sides of the dot; `1.` stays INT + dot
        // so attribute access on literals still lexes.
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            text.push('.');
            self.bump();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    text.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            self.push(TokenKind::FloatLit, text, line, col);
        } else {
            self.push(TokenKind::IntLit, text, line, col);
        }
        Ok(())
    }

    fn scan_string(&mut self) -> Result<(), LexError> {
        let (line, col) = (self.line, self.col);
        let quote = self.peek().unwrap();
        let start = self.pos;
        let triple = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let closer_len = if triple { 3 } else { 1 };
        for _ in 0..closer_len {
            self.bump();
        }
        loop {
            match self.peek() {
                None => {
                    return Err(LexError::new(line, col, "unterminated string literal"));
                }
                Some('\n') if !triple => {
                    return Err(LexError::new(line, col, "unterminated string literal"));
                }
                Some('\\') => {
                    self.bump();
                    if self.bump().is_none() {
                        return Err(LexError::new(line, col, "unterminated string literal"));
                    }
                }
                Some(c) if c == quote => {
                    if !triple {
                        self.bump();
                        break;
                    }
                    if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                        for _ in 0..3 {
                            self.bump();
                        }
                        break;
                    }
                    self.bump();
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
        let lexeme: String = self.chars[start..self.pos].iter().collect();
        self.push(TokenKind::StrLit, lexeme, line, col);
        Ok(())
    }

    fn scan_operator(&mut self) -> Result<(), LexError> {
        let (line, col) = (self.line, self.col);
        let c = self.peek().unwrap();
        let next = self.peek_at(1);

        let two: Option<&str> = match (c, next) {
            ('=', Some('=')) => Some("=="),
            ('!', Some('=')) => Some("!="),
            ('<', Some('=')) => Some("<="),
            ('>', Some('=')) => Some(">="),
            ('-', Some('>')) => Some("->"),
            _ => None,
        };
        if let Some(op) = two {
            self.bump();
            self.bump();
            self.push(TokenKind::Op, op, line, col);
            return Ok(());
        }
        if c == '.' && next == Some('.') && self.peek_at(2) == Some('.') {
            self.bump();
            self.bump();
            self.bump();
            self.push(TokenKind::Punct, "...", line, col);
            return Ok(());
        }
        match c {
            '+' | '-' | '*' | '/' | '%' | '<' | '>' | '=' => {
                self.bump();
                self.push(TokenKind::Op, c, line, col);
                Ok(())
            }
            '(' | ')' | '[' | ']' | ',' | ':' | ';' | '.' => {
                self.bump();
                self.push(TokenKind::Punct, c, line, col);
                Ok(())
            }
            _ => Err(self.error(format!("illegal character {c:?}"))),
        }
    }
}

/// Decodes a STR_LIT lexeme (quotes included) into its string value.
///
/// Recognized escapes: `\\`, `\"`, `\'`, `\n`, `\t`, `\r`. Any other
/// backslash sequence is kept verbatim.
pub(crate) fn decode_string(lexeme: &str) -> String {
    let chars: Vec<char> = lexeme.chars().collect();
    let quote = chars[0];
    let triple = chars.len() >= 6 && chars[1] == quote && chars[2] == quote;
    let (start, end) = if triple { (3, chars.len() - 3) } else { (1, chars.len() - 1) };
    let mut out = String::new();
    let mut i = start;
    while i < end {
        let c = chars[i];
        if c == '\\' && i + 1 < end {
            let escaped = chars[i + 1];
            match escaped {
                '\\' => out.push('\\'),
                '"' => out.push('"'),
                '\'' => out.push('\''),
                'n' => out.push('\n'),
                't' => out.push('\t'),
                'r' => out.push('\r'),
                other => {
                    out.push('\\');
                    out.push(other);
                }
            }
            i += 2;
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}
