//! Support code for the `fasthankel` command-line tool.

pub mod io;

/// Parses a size list such as `100,200,500` or `128..4096` (powers of two
/// between the bounds, inclusive). Items may be mixed: `64,1000..8000`.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>, String> {
    let mut sizes = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo = parse_size(lo)?;
            let hi = parse_size(hi)?;
            if lo > hi {
                return Err(format!("empty range {item}"));
            }
            let mut n = lo;
            while n <= hi {
                sizes.push(n);
                n *= 2;
            }
        } else {
            sizes.push(parse_size(item)?);
        }
    }
    if sizes.is_empty() {
        return Err("no sizes given".to_string());
    }
    Ok(sizes)
}

/// A positive integer, optionally written as `2^k`.
fn parse_size(text: &str) -> Result<usize, String> {
    let text = text.trim();
    let n = match text.split_once('^') {
        Some(("2", exp)) => exp
            .parse::<u32>()
            .ok()
            .and_then(|e| 1usize.checked_shl(e))
            .ok_or_else(|| format!("bad size {text}"))?,
        Some(_) => return Err(format!("bad size {text}")),
        None => text.parse::<usize>().map_err(|_| format!("bad size {text}"))?,
    };
    if n == 0 {
        return Err("sizes must be positive".to_string());
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_sizes("3,5").unwrap(), vec![3, 5]);
        assert_eq!(parse_sizes("2^7..2^10").unwrap(), vec![128, 256, 512, 1024]);
        assert_eq!(parse_sizes("100..500").unwrap(), vec![100, 200, 400]);
        assert_eq!(parse_sizes("7, 2^3").unwrap(), vec![7, 8]);
    }

    #[test]
    fn rejects_bad_lists() {
        for bad in ["", ",", "0", "x", "3^2", "10..5", "2^99"] {
            assert!(parse_sizes(bad).is_err(), "{bad}");
        }
    }
}
