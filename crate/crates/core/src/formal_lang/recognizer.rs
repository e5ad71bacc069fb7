use std::fmt;

use super::{LanguageSpec, Token};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    OutOfAlphabet { position: usize, token: String },
    UnmatchedClose { position: usize },
    TypeMismatch { open: usize, close: usize },
    Unclosed { open_count: usize },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::OutOfAlphabet { position, token } => {
                write!(f, "token {token} at position {position} is outside the alphabet")
            }
            RejectReason::UnmatchedClose { position } => {
                write!(f, "close bracket at position {position} has no open bracket")
            }
            RejectReason::TypeMismatch { open, close } => write!(
                f,
                "close bracket at position {close} does not match open bracket at position {open}"
            ),
            RejectReason::Unclosed { open_count } => {
                write!(f, "{open_count} bracket(s) left open")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    /// Accepted, with the maximum open-bracket stack height.
    Accept { depth: usize },
    Reject(RejectReason),
}

impl Recognition {
    pub fn is_accept(&self) -> bool {
        matches!(self, Recognition::Accept { .. })
    }

    pub fn depth(&self) -> Option<usize> {
        match self {
            Recognition::Accept { depth } => Some(*depth),
            Recognition::Reject(_) => None,
        }
    }
}

/// Pushdown recognizer. No depth bound is applied.
pub fn recognize(spec: &LanguageSpec, tokens: &[Token]) -> Recognition {
    let mut stack: Vec<usize> = Vec::new();
    let mut depth = 0;
    for (pos, tok) in tokens.iter().enumerate() {
        if !spec.in_alphabet(tok) {
            return Recognition::Reject(RejectReason::OutOfAlphabet {
                position: pos,
                token: tok.to_string(),
            });
        }
        if tok.is_open() {
            stack.push(pos);
            depth = depth.max(stack.len());
            continue;
        }
        let Some(open) = stack.pop() else {
            return Recognition::Reject(RejectReason::UnmatchedClose { position: pos });
        };
        if !spec.compatible(tokens[open].ty, tok.ty) {
            return Recognition::Reject(RejectReason::TypeMismatch { open, close: pos });
        }
    }
    if stack.is_empty() {
        Recognition::Accept { depth }
    } else {
        Recognition::Reject(RejectReason::Unclosed {
            open_count: stack.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_lang::{parse_tokens, LanguageKind};

    fn check(kind: LanguageKind, s: &str) -> Recognition {
        let spec = LanguageSpec::standard(kind);
        recognize(&spec, &parse_tokens(s).unwrap())
    }

    #[test]
    fn type_mismatch_rejected() {
        let r = check(LanguageKind::DyckK { k: 2 }, "(1 )2");
        assert_eq!(r, Recognition::Reject(RejectReason::TypeMismatch { open: 0, close: 1 }));
    }

    #[test]
    fn reference_string_dyck_64() {
        let r = check(LanguageKind::DyckK { k: 64 }, "(23 (4 (40 )40 )4 (51 )51 )23");
        assert_eq!(r, Recognition::Accept { depth: 3 });
    }

    #[test]
    fn reference_string_dyck_u() {
        // (u (2 (u nests three deep under the stack-height convention.
        let r = check(LanguageKind::DyckU, "(u (2 (u )2 )u (1 )1 )1");
        assert_eq!(r, Recognition::Accept { depth: 3 });
    }

    #[test]
    fn dyck_u_compatibility() {
        assert!(check(LanguageKind::DyckU, "(1 )u").is_accept());
        assert!(check(LanguageKind::DyckU, "(u )2").is_accept());
        assert!(!check(LanguageKind::DyckU, "(1 )2").is_accept());
    }

    #[test]
    fn structural_rejections() {
        let k2 = LanguageKind::DyckK { k: 2 };
        assert_eq!(
            check(k2, ")1 (1"),
            Recognition::Reject(RejectReason::UnmatchedClose { position: 0 })
        );
        assert_eq!(
            check(k2, "(1 (1 )1"),
            Recognition::Reject(RejectReason::Unclosed { open_count: 1 })
        );
        assert!(matches!(
            check(k2, "(3 )3"),
            Recognition::Reject(RejectReason::OutOfAlphabet { position: 0, .. })
        ));
        assert!(matches!(
            check(k2, "(u )u"),
            Recognition::Reject(RejectReason::OutOfAlphabet { .. })
        ));
        assert_eq!(check(k2, ""), Recognition::Accept { depth: 0 });
    }
}
