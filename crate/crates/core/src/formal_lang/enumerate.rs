use super::{BracketType, LanguageSpec, Side, Token};

/// Every string of exactly `len` tokens in the language with depth at most
/// `spec.max_depth`, in lexicographic token order. Exponential; meant for
/// small lengths.
pub fn enumerate(spec: &LanguageSpec, len: usize) -> Vec<Vec<Token>> {
    let types = spec.surface_types();
    let mut out = Vec::new();
    if len % 2 == 1 {
        return out;
    }
    let mut prefix = Vec::with_capacity(len);
    let mut stack = Vec::new();
    extend(spec, &types, len, &mut prefix, &mut stack, &mut out);
    out.sort();
    out
}

fn extend(
    spec: &LanguageSpec,
    types: &[BracketType],
    len: usize,
    prefix: &mut Vec<Token>,
    stack: &mut Vec<BracketType>,
    out: &mut Vec<Vec<Token>>,
) {
    let remaining = len - prefix.len();
    if remaining == 0 {
        out.push(prefix.clone());
        return;
    }
    if stack.len() < remaining && stack.len() < spec.max_depth {
        for &ty in types {
            prefix.push(Token { side: Side::Open, ty });
            stack.push(ty);
            extend(spec, types, len, prefix, stack, out);
            stack.pop();
            prefix.pop();
        }
    }
    if let Some(&open) = stack.last() {
        for &ty in types.iter().filter(|&&ty| spec.compatible(open, ty)) {
            prefix.push(Token { side: Side::Close, ty });
            stack.pop();
            extend(spec, types, len, prefix, stack, out);
            stack.push(open);
            prefix.pop();
        }
    }
}
