"""Independent oracles for knowledge-tracing math.

Both compute the same quantity as the sequential update formulas but by a
different route: an unnormalized HMM forward pass over a 2-state chain, and
(for short sequences) brute-force enumeration of every latent state path.
"""

from __future__ import annotations

from itertools import product as iter_product


def forward_mastery(p_init, p_transit, p_slip, p_guess, observations):
    """P(known after final transition | observations) via the forward pass.

    States: 0 = unknown, 1 = known. Transitions happen after each observed
    opportunity; mastery never decays.
    """
    pi = [1.0 - p_init, p_init]
    transition = [[1.0 - p_transit, p_transit], [0.0, 1.0]]

    def emission(state, correct):
        if state == 1:
            return 1.0 - p_slip if correct else p_slip
        return p_guess if correct else 1.0 - p_guess

    alpha = [pi[s] * emission(s, observations[0]) for s in (0, 1)]
    for obs in observations[1:]:
        alpha = [
            sum(alpha[s] * transition[s][s2] for s in (0, 1)) * emission(s2, obs)
            for s2 in (0, 1)
        ]
    total = alpha[0] + alpha[1]
    if total == 0:
        return None  # degenerate parameter corner
    filtered = alpha[1] / total
    return filtered + (1.0 - filtered) * p_transit


def enumerate_mastery(p_init, p_transit, p_slip, p_guess, observations):
    """Same posterior by summing over every latent state path (2^(T+1))."""
    pi = [1.0 - p_init, p_init]
    transition = [[1.0 - p_transit, p_transit], [0.0, 1.0]]

    def emission(state, correct):
        if state == 1:
            return 1.0 - p_slip if correct else p_slip
        return p_guess if correct else 1.0 - p_guess

    steps = len(observations)
    total = 0.0
    known_mass = 0.0
    for path in iter_product((0, 1), repeat=steps + 1):
        weight = pi[path[0]]
        for t, obs in enumerate(observations):
            weight *= emission(path[t], obs) * transition[path[t]][path[t + 1]]
        total += weight
        if path[-1] == 1:
            known_mass += weight
    if total == 0:
        return None
    return known_mass / total
