//! Set-partition enumeration via restricted growth strings.
//!
//! A restricted growth string (RGS) `a` of length `m` has `a[0] = 0` and
//! `a[i] ≤ 1 + max(a[..i])`, and encodes the partition whose block `b` is
//! `{i : a[i] = b}`. Enumerating RGSs visits every set partition exactly
//! once, which is what the exhaustive solvers need; blocks fall out in
//! first-appearance order, a canonical labelling for free.

use std::ops::ControlFlow;

/// Visits every partition of `{0, …, m-1}` as a restricted growth string.
/// The visitor may stop early by returning [`ControlFlow::Break`]. For
/// `m = 0` the single empty partition is visited once.
pub fn for_each_partition<F>(m: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    for_each_partition_with(m, None, &mut f)
}

/// Visits every partition of `{0, …, m-1}` with exactly `blocks` blocks.
/// Visits nothing when `blocks` is impossible (`blocks = 0` with `m > 0`,
/// or `blocks > m`).
pub fn for_each_partition_with_blocks<F>(m: usize, blocks: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    for_each_partition_with(m, Some(blocks), &mut f)
}

fn for_each_partition_with<F>(m: usize, blocks: Option<usize>, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if m == 0 {
        return match blocks {
            None | Some(0) => f(&[]),
            Some(_) => ControlFlow::Continue(()),
        };
    }
    if let Some(c) = blocks {
        if c == 0 || c > m {
            return ControlFlow::Continue(());
        }
    }
    let mut rgs = vec![0usize; m];
    descend(&mut rgs, 1, 1, blocks, f)
}

fn descend<F>(
    rgs: &mut [usize],
    pos: usize,
    used: usize,
    blocks: Option<usize>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let m = rgs.len();
    if pos == m {
        if blocks.map_or(true, |c| used == c) {
            return f(rgs);
        }
        return ControlFlow::Continue(());
    }
    // With a fixed block count, every remaining position must still be able
    // to open the missing blocks.
    if let Some(c) = blocks {
        if used + (m - pos) < c {
            return ControlFlow::Continue(());
        }
    }
    // Values 0..used reuse an open block; value == used opens a new one,
    // which is forbidden once a fixed block count is exhausted.
    let max_b = if blocks == Some(used) { used - 1 } else { used };
    for b in 0..=max_b {
        rgs[pos] = b;
        descend(rgs, pos + 1, used.max(b + 1), blocks, f)?;
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_all(m: usize) -> usize {
        let mut n = 0;
        let _ = for_each_partition(m, |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    fn count_blocks(m: usize, c: usize) -> usize {
        let mut n = 0;
        let _ = for_each_partition_with_blocks(m, c, |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    #[test]
    fn totals_match_the_bell_numbers() {
        assert_eq!(
            (1..=6).map(count_all).collect::<Vec<_>>(),
            vec![1, 2, 5, 15, 52, 203]
        );
    }

    #[test]
    fn block_counts_match_the_stirling_numbers() {
        assert_eq!(count_blocks(5, 2), 15);
        assert_eq!(count_blocks(5, 3), 25);
        let by_blocks: usize = (1..=6).map(|c| count_blocks(6, c)).sum();
        assert_eq!(by_blocks, count_all(6));
    }

    #[test]
    fn impossible_block_counts_visit_nothing() {
        assert_eq!(count_blocks(4, 0), 0);
        assert_eq!(count_blocks(4, 5), 0);
        assert_eq!(count_blocks(4, 4), 1);
    }

    #[test]
    fn empty_ground_set_has_one_partition() {
        assert_eq!(count_all(0), 1);
        assert_eq!(count_blocks(0, 0), 1);
        assert_eq!(count_blocks(0, 1), 0);
    }

    #[test]
    fn early_stop_propagates() {
        let mut seen = 0;
        let flow = for_each_partition(5, |_| {
            seen += 1;
            if seen == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(flow, ControlFlow::Break(()));
        assert_eq!(seen, 3);
    }

    #[test]
    fn strings_are_restricted_growth() {
        let _ = for_each_partition(5, |rgs| {
            assert_eq!(rgs[0], 0);
            let mut max = 0;
            for &a in rgs {
                assert!(a <= max + 1);
                max = max.max(a);
            }
            ControlFlow::Continue(())
        });
    }
}
