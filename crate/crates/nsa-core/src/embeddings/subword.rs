/// Splits an identifier into lowercased subwords by convention.
///
/// Boundaries: underscores, a lowercase-to-uppercase transition, and any
/// letter/digit transition. Empty pieces are dropped; an identifier without
/// boundaries comes back whole (lowercased).
pub fn split_subwords(identifier: &str) -> Vec<String> {
    let mut pieces = Vec::new();
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for c in identifier.chars() {
        if c == '_' {
            flush(&mut pieces, &mut current);
            prev = None;
            continue;
        }
        if let Some(p) = prev {
            let camel = p.is_ascii_lowercase() && c.is_ascii_uppercase();
            let digit_edge = p.is_ascii_digit() != c.is_ascii_digit();
            if camel || digit_edge {
                flush(&mut pieces, &mut current);
            }
        }
        current.push(c.to_ascii_lowercase());
        prev = Some(c);
    }
    flush(&mut pieces, &mut current);
    pieces
}

fn flush(pieces: &mut Vec<String>, current: &mut String) {
    if !current.is_empty() {
        pieces.push(std::mem::take(current));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_table() {
        // Hand-derived expectations from the three boundary rules.
        let cases: &[(&str, &[&str])] = &[
            ("writeFile", &["write", "file"]),
            ("x", &["x"]),
            ("mark_point2D", &["mark", "point", "2", "d"]),
            ("snake_case_name", &["snake", "case", "name"]),
            ("camelCaseName", &["camel", "case", "name"]),
            ("HTTPServer", &["httpserver"]),
            ("parseHTTPResponse", &["parse", "httpresponse"]),
            ("__init__", &["init"]),
            ("_private", &["private"]),
            ("trailing_", &["trailing"]),
            ("a_b", &["a", "b"]),
            ("value2", &["value", "2"]),
            ("2fast", &["2", "fast"]),
            ("v2counter", &["v", "2", "counter"]),
            ("UPPER_SNAKE", &["upper", "snake"]),
            ("MixedUPPERlower", &["mixed", "uppe", "rlower"]),
            ("x0", &["x", "0"]),
            ("pos_x", &["pos", "x"]),
            ("ratio_fill_75", &["ratio", "fill", "75"]),
            ("hasWon3Times", &["has", "won", "3", "times"]),
        ];
        for (input, expected) in cases {
            let got = split_subwords(input);
            let expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
            assert_eq!(got, expected, "input {input:?}");
        }
    }

    #[test]
    fn underscores_only_yields_nothing() {
        assert!(split_subwords("_").is_empty());
        assert!(split_subwords("___").is_empty());
    }
}
