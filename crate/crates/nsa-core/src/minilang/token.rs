use std::fmt;

/// Token classes produced by the tokenizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword,
    Ident,
    IntLit,
    FloatLit,
    StrLit,
    Op,
    Punct,
    Newline,
    Indent,
    Dedent,
    Comment,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TokenKind::Keyword => "KEYWORD",
            TokenKind::Ident => "IDENT",
            TokenKind::IntLit => "INT_LIT",
            TokenKind::FloatLit => "FLOAT_LIT",
            TokenKind::StrLit => "STR_LIT",
            TokenKind::Op => "OP",
            TokenKind::Punct => "PUNCT",
            TokenKind::Newline => "NEWLINE",
            TokenKind::Indent => "INDENT",
            TokenKind::Dedent => "DEDENT",
            TokenKind::Comment => "COMMENT",
            TokenKind::Eof => "EOF",
        };
        f.write_str(name)
    }
}

/// One lexical token with its 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: usize,
    pub col: usize,
}

impl Token {
    pub fn new(kind: TokenKind, lexeme: impl Into<String>, line: usize, col: usize) -> Self {
        Token { kind, lexeme: lexeme.into(), line, col }
    }
}

/// Reserved words of the language.
pub const KEYWORDS: &[&str] = &[
    "def", "class", "return", "if", "elif", "else", "while", "for", "in", "pass", "and", "or",
    "not", "True", "False", "None",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}
