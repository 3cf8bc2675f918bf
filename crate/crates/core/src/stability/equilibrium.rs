use crate::scf::Scf;

/// The rule induced when every voter plays a profile-independent best response.
///
/// A voter who can never change the outcome votes truthfully. Any other voter
/// must have, for each preference, a unique vote that is weakly dominant
/// against every combination of the others' votes; otherwise the result is
/// undefined and `None` is returned.
pub fn best_response_equilibrium(f: &Scf) -> Option<Scf> {
    let n = f.n();
    let table = 1u32 << n;
    // strategy[i][b] is voter i's vote when preferring b
    let mut strategy = vec![[false, true]; n];
    for (i, plan) in strategy.iter_mut().enumerate() {
        if !f.depends_on(i) {
            continue;
        }
        let bit = 1u32 << i;
        for b in [false, true] {
            let dominant = |x: bool| {
                (0..table).filter(|v| v & bit == 0).all(|rest| {
                    let with = |vote: bool| f.eval_bits(if vote { rest | bit } else { rest });
                    (with(x) == b) >= (with(!x) == b)
                })
            };
            plan[b as usize] = match (dominant(false), dominant(true)) {
                (true, false) => false,
                (false, true) => true,
                _ => return None,
            };
        }
    }
    let played = |v: u32| {
        (0..n).fold(0u32, |acc, i| {
            if strategy[i][(v >> i & 1) as usize] {
                acc | 1 << i
            } else {
                acc
            }
        })
    };
    Some(Scf::from_fn(n, |v| f.eval_bits(played(v.bits()))).expect("voter count already validated"))
}
