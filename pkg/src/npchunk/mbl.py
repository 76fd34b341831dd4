"""Memory-based learning: instance storage, information-gain feature
weighting, weighted-overlap distance, k-nearest-distance classification.

Classification considers the instances lying in the k nearest distance
shells (distinct distance values), all voting equally.  The default
feature weighting divides information gain by the feature's split info
(gain ratio); plain gain is available via ``weighting="gain"``.
"""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from math import log2
from typing import Iterable, Sequence

import numpy as np

FeatureWeights = tuple[float, ...]

WEIGHTINGS = ("gain", "gainratio")


@dataclass(frozen=True)
class Instance:
    features: tuple[str, ...]
    label: str

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))


class InstanceBase:
    """Immutable collection of training instances.

    Feature values and labels are interned to integer codes at
    construction so classification can run as vectorized comparisons;
    queries containing unseen values simply mismatch every stored value.
    """

    def __init__(self, instances: Iterable[Instance]):
        items = tuple(instances)
        if not items:
            raise ValueError("instance base needs at least one instance")
        arity = len(items[0].features)
        for inst in items:
            if len(inst.features) != arity:
                raise ValueError(
                    f"instances differ in arity ({len(inst.features)} vs {arity})"
                )
        self.instances = items
        self.arity = arity
        self.class_frequencies = Counter(inst.label for inst in items)

        self._labels = tuple(sorted(self.class_frequencies))
        label_code = {label: i for i, label in enumerate(self._labels)}
        self._label_codes = np.fromiter(
            (label_code[inst.label] for inst in items), dtype=np.int32, count=len(items)
        )
        self._value_codes: list[dict[str, int]] = []
        self._columns = np.empty((len(items), arity), dtype=np.int32)
        for f in range(arity):
            codes: dict[str, int] = {}
            for row, inst in enumerate(items):
                self._columns[row, f] = codes.setdefault(inst.features[f], len(codes))
            self._value_codes.append(codes)

    def __len__(self) -> int:
        return len(self.instances)

    def encode_query(self, features: Sequence[str]) -> np.ndarray:
        if len(features) != self.arity:
            raise ValueError(f"query arity {len(features)} != base arity {self.arity}")
        return np.fromiter(
            (self._value_codes[f].get(v, -1) for f, v in enumerate(features)),
            dtype=np.int32,
            count=self.arity,
        )


def _entropy(counts: Iterable[int], total: int) -> float:
    h = 0.0
    for count in counts:
        if count:
            p = count / total
            h -= p * log2(p)
    return h


def information_gain(base: InstanceBase, weighting: str = "gainratio") -> FeatureWeights:
    """Per-feature weights: entropy decrease of the class distribution,
    divided by the feature's split info under the default gain-ratio
    setting.  Constant features get weight 0 in both modes.
    """
    if weighting not in WEIGHTINGS:
        raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")
    n = len(base.instances)
    class_entropy = _entropy(base.class_frequencies.values(), n)
    weights = []
    for f in range(base.arity):
        joint: dict[str, Counter] = defaultdict(Counter)
        for inst in base.instances:
            joint[inst.features[f]][inst.label] += 1
        conditional = 0.0
        split_info = 0.0
        for label_counts in joint.values():
            count = sum(label_counts.values())
            p = count / n
            conditional += p * _entropy(label_counts.values(), count)
            split_info -= p * log2(p)
        gain = max(class_entropy - conditional, 0.0)
        if weighting == "gainratio":
            weights.append(0.0 if split_info == 0.0 else gain / split_info)
        else:
            weights.append(gain)
    return tuple(weights)


def distance(a: Sequence[str], b: Sequence[str], weights: Sequence[float]) -> float:
    """Weighted overlap: the sum of weights of mismatching positions."""
    if not len(a) == len(b) == len(weights):
        raise ValueError("feature sequences and weights must share one arity")
    total = 0.0
    for x, y, w in zip(a, b, weights):
        if x != y:
            total += w
    return total


def classify(
    base: InstanceBase,
    weights: Sequence[float],
    query: Sequence[str],
    k: int = 1,
) -> tuple[str, dict[str, int]]:
    """Label of ``query`` by majority vote over the k nearest distance shells.

    All instances at one of the k smallest distinct distances vote
    equally.  Vote ties go to the class with the higher training
    frequency, then to the lexicographically smallest label.  Returns
    the winning label and the per-class vote counts.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(weights) != base.arity:
        raise ValueError(f"got {len(weights)} weights for arity {base.arity}")
    q = base.encode_query(query)
    # accumulate feature by feature: bitwise-identical to a sequential
    # per-instance sum, so shell ties are exactly reproducible
    dist = np.zeros(len(base.instances), dtype=np.float64)
    for f in range(base.arity):
        w = weights[f]
        if w != 0.0:
            dist += w * (base._columns[:, f] != q[f])
    shell_max = 0.0
    remaining = dist
    for _ in range(k):
        if remaining.size == 0:
            break
        shell_max = remaining.min()
        remaining = remaining[remaining > shell_max]
    members = dist <= shell_max
    counts = np.bincount(base._label_codes[members], minlength=len(base._labels))
    votes = {
        base._labels[code]: int(count) for code, count in enumerate(counts) if count
    }
    top = max(votes.values())
    tied = [label for label, count in votes.items() if count == top]
    if len(tied) > 1:
        best = max(base.class_frequencies[label] for label in tied)
        tied = [label for label in tied if base.class_frequencies[label] == best]
    return min(tied), votes


def train(
    instances: Iterable[Instance], weighting: str = "gainratio"
) -> tuple[InstanceBase, FeatureWeights]:
    """Store all instances (duplicates preserved) and weight the features."""
    base = InstanceBase(instances)
    return base, information_gain(base, weighting)


_DUMP_HEADER = re.compile(r"ARITY k=(\d+)$")


def dump_base(base: InstanceBase, weights: Sequence[float]) -> str:
    """Serialize a trained base: header, tab-separated instances, weights
    with 12 significant digits."""
    if len(weights) != base.arity:
        raise ValueError(f"got {len(weights)} weights for arity {base.arity}")
    lines = [f"ARITY k={base.arity}"]
    for inst in base.instances:
        lines.append("\t".join((*inst.features, inst.label)))
    lines.append("WEIGHTS " + " ".join(f"{w:.12g}" for w in weights))
    return "\n".join(lines) + "\n"


def load_base(text: str) -> tuple[InstanceBase, FeatureWeights]:
    lines = text.splitlines()
    if len(lines) < 3:
        raise ValueError("instance base dump needs a header, instances and weights")
    match = _DUMP_HEADER.match(lines[0])
    if not match:
        raise ValueError(f"bad dump header {lines[0]!r}")
    arity = int(match.group(1))
    if not lines[-1].startswith("WEIGHTS "):
        raise ValueError("instance base dump must end with a WEIGHTS line")
    weights = tuple(float(w) for w in lines[-1].split()[1:])
    if len(weights) != arity:
        raise ValueError(f"expected {arity} weights, got {len(weights)}")
    instances = []
    for line in lines[1:-1]:
        fields = line.split("\t")
        if len(fields) != arity + 1:
            raise ValueError(f"expected {arity + 1} tab-separated fields, got {line!r}")
        instances.append(Instance(tuple(fields[:-1]), fields[-1]))
    return InstanceBase(instances), weights
