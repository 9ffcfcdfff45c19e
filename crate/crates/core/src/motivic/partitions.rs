/// All partitions of `n` as weakly decreasing part lists, in reverse
/// lexicographic order (`[n]` first, `[1, ..., 1]` last).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend(n, n, &mut current, &mut out);
    out
}

fn extend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        extend(remaining - part, part, current, out);
        current.pop();
    }
}
