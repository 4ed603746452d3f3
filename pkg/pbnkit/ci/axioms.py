"""Property tests for the axioms of conditional independence.

For a partition (X, Y, Z, W) of (some of) the variables of a
distribution, each axiom is an implication:

    symmetry       X _|_ Y | Z                        => Y _|_ X | Z
    decomposition  X _|_ {Y,W} | Z                    => X _|_ Y | Z
    contraction    X _|_ Y | Z  and  X _|_ W | Y,Z    => X _|_ {Y,W} | Z
    weak_union     X _|_ {Y,W} | Z                    => X _|_ Y | Z,W
                                                         (and X _|_ W | Z)
    intersection   X _|_ Y | Z,W  and  X _|_ W | Y,Z  => X _|_ {Y,W} | Z
                   (only for strictly positive distributions)

`axiom_suite` checks all five on one distribution. Whenever an
antecedent fails the axiom is "vacuous" for that distribution. A
failing consequent is a "violation", except for intersection on a
distribution with zero cells, where it is reported as a "positivity"
counterexample.

`AxiomSuite` runs many seeded trials. Each trial checks one generic
random distribution (almost always vacuous) and one constructed as
P(z)P(x|z)P(y,w|z), which satisfies every antecedent. Trials are
seeded individually, so running them in parallel (via joblib) gives
exactly the same results as running them one after the other.

"""

from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from pbnkit import logger, env
from pbnkit.engine import Component
from pbnkit.exceptions import PartitionOverlap
from pbnkit.distribution import Variable
from .checks import ci_deviation
from .generate import random_distribution, factorized_distribution, copy_distribution

axioms = ("symmetry", "decomposition", "contraction", "weak_union", "intersection")
statuses = ("vacuous", "holds", "violated", "positivity")


@dataclass(frozen=True)
class AxiomOutcome:
    axiom: str
    status: str
    antecedent_deviation: float
    consequent_deviation: float


@dataclass
class AxiomReport:
    """Outcome of all axioms on one distribution."""

    positive: bool
    outcomes: dict = field(default_factory=dict)

    @property
    def violations(self):
        return [o for o in self.outcomes.values() if o.status == "violated"]

    def __getitem__(self, axiom):
        return self.outcomes[axiom]


def _check_partition(dist, partition):
    x, y, z, w = (tuple(p) for p in partition)
    names = x + y + z + w
    if len(set(names)) != len(names):
        raise PartitionOverlap(f"Partition {partition} is not disjoint.")
    if not x or not y:
        raise ValueError("X and Y of the partition must be nonempty.")
    for n in names:
        dist.axis(n)
    return x, y, z, w


def axiom_suite(dist, partition, tol=None):
    """Check the five axioms on dist for the partition (X, Y, Z, W).

    Args:
        dist: Factor.
        partition: Four disjoint tuples of variable names (Z, W may be empty).
        tol: Tolerance for antecedents and consequents alike.

    Returns:
        AxiomReport.

    """
    if tol is None:
        tol = env.tolerance
    x, y, z, w = _check_partition(dist, partition)

    def dev(left, right, given):
        return ci_deviation(dist, left, right, given)[0]

    implications = {
        "symmetry": ([dev(x, y, z)], [dev(y, x, z)]),
        "decomposition": ([dev(x, y + w, z)], [dev(x, y, z)]),
        "contraction": ([dev(x, y, z), dev(x, w, y + z)], [dev(x, y + w, z)]),
        "weak_union": ([dev(x, y + w, z)], [dev(x, y, z + w), dev(x, w, z)]),
        "intersection": ([dev(x, y, z + w), dev(x, w, y + z)], [dev(x, y + w, z)]),
    }

    positive = bool(np.all(dist.values > 0))
    report = AxiomReport(positive=positive)

    for axiom, (antecedents, consequents) in implications.items():
        ante, cons = max(antecedents), max(consequents)

        if ante > tol:
            status = "vacuous"
        elif cons <= tol:
            status = "holds"
        elif axiom == "intersection" and not positive:
            status = "positivity"
        else:
            status = "violated"

        report.outcomes[axiom] = AxiomOutcome(axiom, status, ante, cons)

    return report


@dataclass
class AxiomSummary:
    """Counts per axiom and status over many trials."""

    trials: int
    counts: dict = field(default_factory=lambda: {a: {s: 0 for s in statuses} for a in axioms})
    violations: list = field(default_factory=list)
    counterexample: object = None

    def add(self, trial, label, report):
        for axiom, outcome in report.outcomes.items():
            self.counts[axiom][outcome.status] += 1
            if outcome.status == "violated":
                self.violations.append((trial, label, outcome))

    def non_vacuous(self, axiom):
        return sum(n for s, n in self.counts[axiom].items() if s != "vacuous")

    def lines(self):
        yield f"axiom\tnon_vacuous\tvacuous\tholds\tviolated\tpositivity"
        for a in axioms:
            c = self.counts[a]
            yield f"{a}\t{self.non_vacuous(a)}\t{c['vacuous']}\t{c['holds']}\t{c['violated']}\t{c['positivity']}"
        if self.counterexample is not None:
            o = self.counterexample
            yield (
                f"copy counterexample (X=Y=W): intersection {o.status}, "
                f"antecedent deviation {o.antecedent_deviation:.3e}, "
                f"consequent deviation {o.consequent_deviation:.3e}"
            )


def make_variables(n_vars, card):
    return [Variable(f"V{j}", [f"v{j}_{k}" for k in range(card)]) for j in range(n_vars)]


def random_partition(variables, rng):
    """First variable to X, second to Y, the others uniformly to X, Y, Z or W."""
    blocks = [[variables[0]], [variables[1]], [], []]
    for v in variables[2:]:
        blocks[int(rng.integers(4))].append(v)
    return blocks


def run_trial(variables, seed, trial, positive, tol, constructed):
    """One seeded trial: a generic and (optionally) a constructed distribution."""
    rng = np.random.default_rng([seed, trial])
    blocks = random_partition(variables, rng)
    partition = [tuple(v.name for v in b) for b in blocks]

    results = []

    generic = random_distribution(variables, [seed, trial, 0], positive=positive)
    results.append(("generic", axiom_suite(generic, partition, tol)))

    if constructed:
        built = factorized_distribution(*blocks, seed=[seed, trial, 1], positive=positive)
        results.append(("constructed", axiom_suite(built, partition, tol)))

    return results


class AxiomSuite(Component):
    """Seeded property test of the independence axioms.

    Attributes:
        n_vars: Number of variables (at least 2).
        card: States per variable.
        trials: Number of trials.
        seed: Base seed.
        positive: Draw strictly positive distributions.
        tol: Tolerance for all checks.
        constructed: Also check a distribution built to satisfy the antecedents.

    """

    kind = "axiom_suite"

    default_context = {"n_jobs": env.n_jobs}

    def __init__(
        self,
        n_vars=4,
        card=2,
        trials=500,
        seed=0,
        positive=True,
        tol=None,
        constructed=True,
        context={},
    ):
        super().__init__(context=context)

        if n_vars < 2:
            raise ValueError("Axiom trials need at least two variables.")

        self.n_vars = int(n_vars)
        self.card = int(card)
        self.trials = int(trials)
        self.seed = int(seed)
        self.positive = bool(positive)
        self.tol = env.tolerance if tol is None else float(tol)
        self.constructed = bool(constructed)

    def _get_config(self):
        return {
            "n_vars": self.n_vars,
            "card": self.card,
            "trials": self.trials,
            "seed": self.seed,
            "positive": self.positive,
            "tol": self.tol,
            "constructed": self.constructed,
        }

    def __call__(self):
        variables = make_variables(self.n_vars, self.card)

        results = Parallel(n_jobs=self.context["n_jobs"])(
            delayed(run_trial)(variables, self.seed, t, self.positive, self.tol, self.constructed)
            for t in range(self.trials)
        )

        summary = AxiomSummary(trials=self.trials)
        for t, trial in enumerate(results):
            for label, report in trial:
                summary.add(t, label, report)

        summary.counterexample = copy_counterexample(self.card, self.tol)

        logger.info(
            f"{self.get_hid()}: {self.trials} trials, {len(summary.violations)} violation(s)."
        )

        return summary


def copy_counterexample(card=2, tol=None):
    """Intersection outcome on X = Y = W (with empty Z)."""
    x, y, w = make_variables(3, card)
    dist = copy_distribution(x, y, w)
    report = axiom_suite(dist, ((x.name,), (y.name,), (), (w.name,)), tol)
    return report["intersection"]
