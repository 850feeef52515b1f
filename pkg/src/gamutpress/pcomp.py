"""Paired-comparison (2AFC) analysis: consistency, agreement, significance
tests on score equality, and critical-range grouping of method totals.

Inputs arrive as vote rows (participant, image_id, method_a, method_b,
chosen, response_ms); a ballot is one participant's complete round-robin
over one image.
"""

import csv
import io
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np


@dataclass(frozen=True)
class ObserverBallot:
    """One complete round-robin: every unordered method pair judged once."""

    observer: str
    image: str
    choices: tuple  # ((method_a, method_b, chosen), ...)


@dataclass(frozen=True)
class VoteMatrix:
    methods: tuple
    counts: np.ndarray  # counts[i, j] = times method i beat method j
    m: int  # comparisons per pair

    @property
    def t(self):
        return len(self.methods)

    def totals(self):
        return self.counts.sum(axis=1)


def make_ballots(rows):
    """Group vote rows into ObserverBallots keyed by (participant, image)."""
    grouped = {}
    for row in rows:
        key = (str(row["participant"]), str(row["image_id"]))
        grouped.setdefault(key, []).append(
            (str(row["method_a"]), str(row["method_b"]), str(row["chosen"]))
        )
    return [
        ObserverBallot(observer=obs, image=img, choices=tuple(choices))
        for (obs, img), choices in sorted(grouped.items())
    ]


def _ballot_methods(ballots):
    methods = set()
    for ballot in ballots:
        for a, b, _ in ballot.choices:
            methods.add(a)
            methods.add(b)
    return tuple(sorted(methods))


def _validate_ballot(ballot, methods):
    expected = {frozenset(p) for p in combinations(methods, 2)}
    seen = set()
    for a, b, chosen in ballot.choices:
        pair = frozenset((a, b))
        if pair in seen:
            raise ValueError(f"ballot {ballot.observer}/{ballot.image}: duplicate pair {a} vs {b}")
        if chosen not in (a, b):
            raise ValueError(f"ballot {ballot.observer}/{ballot.image}: chose {chosen!r} outside pair")
        seen.add(pair)
    if seen != expected:
        missing = sorted(tuple(sorted(p)) for p in expected - seen)
        raise ValueError(f"ballot {ballot.observer}/{ballot.image}: incomplete, missing {missing}")


def tally_votes(ballots):
    """Aggregate complete ballots into a VoteMatrix plus totals/proportions."""
    if not ballots:
        raise ValueError("no ballots")
    methods = _ballot_methods(ballots)
    index = {mth: i for i, mth in enumerate(methods)}
    t = len(methods)
    counts = np.zeros((t, t), dtype=np.int64)
    for ballot in ballots:
        _validate_ballot(ballot, methods)
        for a, b, chosen in ballot.choices:
            loser = b if chosen == a else a
            counts[index[chosen], index[loser]] += 1
    vm = VoteMatrix(methods=methods, counts=counts, m=len(ballots))
    totals = vm.totals()
    proportions = totals / (vm.m * (t - 1))
    return vm, dict(zip(methods, totals.tolist())), dict(zip(methods, proportions.tolist()))


def ballot_scores(ballot):
    scores = {}
    for a, b, chosen in ballot.choices:
        scores.setdefault(a, 0)
        scores.setdefault(b, 0)
        scores[chosen] += 1
    return scores


def max_circular_triads(t):
    if t % 2 == 1:
        return t * (t * t - 1) / 24.0
    return t * (t * t - 4) / 24.0


def circular_triads(ballot):
    """Count of intransitive 3-cycles: t(t-1)(2t-1)/12 - sum(s_i^2)/2."""
    scores = np.array(list(ballot_scores(ballot).values()), dtype=np.float64)
    t = len(scores)
    return t * (t - 1) * (2 * t - 1) / 12.0 - 0.5 * float(np.sum(scores * scores))


def consistency_coefficient(ballot):
    """zeta = 1 - d/d_max for one round-robin; 1 means fully transitive."""
    methods = sorted(ballot_scores(ballot))
    if len(methods) < 3:
        raise ValueError("consistency needs at least 3 methods")
    _validate_ballot(ballot, methods)
    return 1.0 - circular_triads(ballot) / max_circular_triads(len(methods))


def mean_consistency(ballots):
    methods = _ballot_methods(ballots)
    values = []
    for ballot in ballots:
        _validate_ballot(ballot, methods)
        values.append(consistency_coefficient(ballot))
    return float(np.mean(values)), values


def agreement_sigma(vm):
    a = vm.counts
    return float(np.sum(a * (a - 1) / 2.0))


def agreement_coefficient(vm):
    """Inter-observer agreement u; 1 = unanimous, minimum -1/(m-1)."""
    if vm.m < 2:
        raise ValueError("agreement needs at least 2 comparisons per pair")
    t = vm.t
    pairs = t * (t - 1) / 2.0
    denom = (vm.m * (vm.m - 1) / 2.0) * pairs
    return 2.0 * agreement_sigma(vm) / denom - 1.0


def significance_tests(vm):
    """Agreement chi-square (df = C(t,2)) and the score-equality statistic.

    chi2 = C(t,2) * (1 + u*(m-1)); d_n = 4/(m*t) * sum((s_i - m(t-1)/2)^2).
    Both require m > 3 for the chi-square approximation to hold.
    """
    if vm.m <= 3:
        raise ValueError("significance tests need m > 3 comparisons per pair")
    t = vm.t
    pairs = t * (t - 1) // 2
    u = agreement_coefficient(vm)
    chi2 = pairs * (1.0 + u * (vm.m - 1))
    totals = vm.totals().astype(np.float64)
    centered = totals - vm.m * (t - 1) / 2.0
    d_n = 4.0 / (vm.m * t) * float(np.sum(centered * centered))
    return {"chi2": chi2, "df": pairs, "d_n": d_n}


def rank_and_group(totals, critical_range):
    """Sort methods by total descending; merge neighbors closer than R."""
    ranked = sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
    groups = []
    for method, score in ranked:
        if groups and groups[-1][-1][1] - score < critical_range:
            groups[-1].append((method, score))
        else:
            groups.append([(method, score)])
    return groups


# ---------------------------------------------------------------------------
# CSV plumbing and the full report


VOTE_FIELDS = ("participant", "image_id", "method_a", "method_b", "chosen", "response_ms")


def read_votes_csv(text):
    reader = csv.DictReader(io.StringIO(text))
    missing = set(VOTE_FIELDS) - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"vote CSV missing columns: {sorted(missing)}")
    return list(reader)


def analyze(rows, critical_range=90.0):
    """Everything at once: tally, zeta, u, chi2, d_n, proportions, groups."""
    ballots = make_ballots(rows)
    vm, totals, proportions = tally_votes(ballots)
    zeta_mean, zeta_all = mean_consistency(ballots)
    result = {
        "methods": vm.methods,
        "m": vm.m,
        "totals": totals,
        "proportions": proportions,
        "consistency_mean": zeta_mean,
        "consistency_values": zeta_all,
        "agreement": agreement_coefficient(vm),
        "groups": rank_and_group(totals, critical_range),
        "critical_range": critical_range,
    }
    result.update(significance_tests(vm))
    return result


def report_text(result):
    lines = [
        f"methods: {', '.join(result['methods'])}",
        f"comparisons per pair (m): {result['m']}",
        f"coefficient of consistency (mean over ballots): {result['consistency_mean']:.4f}",
        f"coefficient of agreement: {result['agreement']:.4f}",
        f"chi-square: {result['chi2']:.2f} (df={result['df']})",
        f"score-equality D_n: {result['d_n']:.2f}",
        "totals: " + ", ".join(f"{mth}={result['totals'][mth]}" for mth in result["methods"]),
        "proportions: " + ", ".join(f"{mth}={result['proportions'][mth]:.3f}" for mth in result["methods"]),
        f"groups at R={result['critical_range']:g}: "
        + " | ".join("{" + ", ".join(f"{mth}({score})" for mth, score in grp) + "}" for grp in result["groups"]),
    ]
    return "\n".join(lines) + "\n"


def report_csv(result):
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["method", "total", "proportion", "group"])
    group_of = {}
    for gi, grp in enumerate(result["groups"]):
        for method, _ in grp:
            group_of[method] = gi
    for method in result["methods"]:
        writer.writerow(
            [method, result["totals"][method], f"{result['proportions'][method]:.6f}", group_of[method]]
        )
    writer.writerow([])
    writer.writerow(["consistency_mean", f"{result['consistency_mean']:.6f}"])
    writer.writerow(["agreement", f"{result['agreement']:.6f}"])
    writer.writerow(["chi2", f"{result['chi2']:.6f}"])
    writer.writerow(["df", result["df"]])
    writer.writerow(["d_n", f"{result['d_n']:.6f}"])
    return out.getvalue()
