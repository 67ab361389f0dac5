use super::Formula;

// Binding strength, loosest first.
const IFF: u8 = 0;
const IMPL: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Impl(..) => IMPL,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

/// Canonical text for `f`: sets sorted, minimal parentheses, and
/// `parse(&print(f)) == f`.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write(f: &Formula, out: &mut String) {
    match f {
        Formula::Atom(p) => out.push_str(p),
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Neg(body) => {
            out.push('!');
            write_operand(body, UNARY, out);
        }
        Formula::Belief { trust, data, body } => {
            out.push('B');
            out.push_str(&trust.to_string());
            out.push_str(&data.to_string());
            write_modal_body(body, out);
        }
        Formula::Know { data, body } => {
            out.push('K');
            out.push_str(&data.to_string());
            write_modal_body(body, out);
        }
        Formula::Strategy {
            coalition,
            ante,
            post,
            data,
            body,
        } => {
            out.push('[');
            for (i, actor) in coalition.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(actor);
            }
            out.push(']');
            if ante == post {
                out.push_str(&ante.to_string());
            } else {
                let ante = ante.to_string();
                let post = post.to_string();
                out.push_str(&ante[..ante.len() - 1]);
                out.push(';');
                out.push_str(&post[1..]);
            }
            out.push_str(&data.to_string());
            write_modal_body(body, out);
        }
        Formula::Impl(l, r) => write_binary(l, " -> ", r, IMPL, false, out),
        Formula::And(l, r) => write_binary(l, " & ", r, AND, true, out),
        Formula::Or(l, r) => write_binary(l, " | ", r, OR, true, out),
        Formula::Iff(l, r) => write_binary(l, " <-> ", r, IFF, true, out),
    }
}

fn write_modal_body(body: &Formula, out: &mut String) {
    // A bare identifier directly after `}` reads fine; keep a space before
    // other prefixes for legibility.
    match body {
        Formula::Atom(_) | Formula::True | Formula::False => {}
        _ if level(body) < UNARY => {}
        _ => out.push(' '),
    }
    write_operand(body, UNARY, out);
}

fn write_binary(l: &Formula, op: &str, r: &Formula, lvl: u8, left_assoc: bool, out: &mut String) {
    let (l_min, r_min) = if left_assoc { (lvl, lvl + 1) } else { (lvl + 1, lvl) };
    write_operand(l, l_min, out);
    out.push_str(op);
    write_operand(r, r_min, out);
}

/// Writes `f`, parenthesized if it binds more loosely than `min`.
fn write_operand(f: &Formula, min: u8, out: &mut String) {
    if level(f) < min {
        out.push('(');
        write(f, out);
        out.push(')');
    } else {
        write(f, out);
    }
}
