"""Synthetic longitudinal medical-record corpora with cohort labels.

Each patient is a time-ordered sequence of sparse binary visit vectors over a
code vocabulary.  Cohorts are defined by (mostly) disjoint code sets; each
patient carries a persistent "chronic" subset of their cohort's codes that
repeats across visits, plus per-visit transient codes.  An overlap knob shares
part of every cohort's code set to tune separability.

Persistence uses a line-delimited text format (one record per line) that
round-trips exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class ConfigError(ValueError):
    """Invalid corpus generation configuration."""


class ParseError(ValueError):
    """Malformed corpus file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(ValueError):
    """Structurally parseable corpus that violates a corpus invariant."""


@dataclass(frozen=True)
class CodeVocabulary:
    codes: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.codes)) != len(self.codes):
            raise ValidationError("vocabulary codes must be unique")
        if len(self.codes) < 2:
            raise ValidationError("vocabulary needs at least 2 codes")

    @property
    def d(self) -> int:
        return len(self.codes)


@dataclass(frozen=True)
class VisitVector:
    active_codes: tuple[int, ...]  # sorted ascending, unique

    def __post_init__(self):
        if list(self.active_codes) != sorted(set(self.active_codes)):
            raise ValidationError("active_codes must be sorted and unique")

    def multihot(self, d: int) -> np.ndarray:
        v = np.zeros(d)
        v[list(self.active_codes)] = 1.0
        return v


@dataclass(frozen=True)
class PatientRecord:
    patient_id: str
    visits: tuple[VisitVector, ...]
    cohort_label: int | None = None

    def __post_init__(self):
        if not self.visits:
            raise ValidationError(f"record {self.patient_id} has no visits")


@dataclass(frozen=True)
class Cohort:
    label: int
    code_set: tuple[int, ...]


@dataclass
class Corpus:
    vocabulary: CodeVocabulary
    records: list[PatientRecord]
    cohorts: list[Cohort] = field(default_factory=list)

    def validate(self) -> None:
        d = self.vocabulary.d
        labels = {c.label for c in self.cohorts}
        for rec in self.records:
            for visit in rec.visits:
                for code in visit.active_codes:
                    if not 0 <= code < d:
                        raise ValidationError(
                            f"record {rec.patient_id}: code index {code} out of range [0, {d})"
                        )
            if rec.cohort_label is not None and self.cohorts and rec.cohort_label not in labels:
                raise ValidationError(
                    f"record {rec.patient_id}: unknown cohort label {rec.cohort_label}"
                )

    @property
    def n_visits(self) -> int:
        return sum(len(r.visits) for r in self.records)


@dataclass(frozen=True)
class CorpusConfig:
    d: int = 64
    n_cohorts: int = 3
    patients_per_cohort: int = 100
    codes_per_visit_mean: float = 3.69
    visit_count_mean: float = 6.65
    max_visits: int = 32
    cohort_code_set_size: int = 12
    chronic_fraction: float = 0.9
    background_rate: float = 0.1
    overlap: float = 0.0

    def validate(self) -> None:
        if self.d < 2:
            raise ConfigError("d must be >= 2")
        if self.n_cohorts * self.patients_per_cohort <= 0:
            raise ConfigError("need at least one cohort and one patient per cohort")
        if not 0.0 <= self.overlap < 1.0:
            raise ConfigError("overlap must be in [0, 1)")
        if not 0.0 < self.chronic_fraction <= 1.0:
            raise ConfigError("chronic_fraction must be in (0, 1]")
        if self.codes_per_visit_mean < 1.0:
            raise ConfigError("codes_per_visit_mean must be >= 1")
        if not 1 <= self.visit_count_mean <= self.max_visits:
            raise ConfigError("visit_count_mean must lie in [1, max_visits]")
        shared = round(self.overlap * self.cohort_code_set_size)
        exclusive = self.cohort_code_set_size - shared
        needed = shared + self.n_cohorts * exclusive
        if needed > self.d:
            raise ConfigError(
                f"cohort code sets need {needed} codes but vocabulary has only {self.d}"
            )
        if self.background_rate > 0 and needed == self.d:
            raise ConfigError("background_rate > 0 requires codes outside all cohort sets")


def generate_corpus(config: CorpusConfig, seed: int) -> Corpus:
    """Generate a deterministic synthetic corpus for the given config and seed."""
    config.validate()
    rng = np.random.default_rng(seed)

    d = config.d
    vocab = CodeVocabulary(tuple(f"c{i:03d}" for i in range(d)))

    shared_n = round(config.overlap * config.cohort_code_set_size)
    exclusive_n = config.cohort_code_set_size - shared_n
    shared_pool = tuple(range(shared_n))
    cohorts = []
    cursor = shared_n
    for k in range(config.n_cohorts):
        exclusive = tuple(range(cursor, cursor + exclusive_n))
        cursor += exclusive_n
        cohorts.append(Cohort(label=k, code_set=tuple(sorted(shared_pool + exclusive))))
    background_pool = np.arange(cursor, d)

    chronic_mean = config.chronic_fraction * config.codes_per_visit_mean
    transient_mean = (1.0 - config.chronic_fraction) * config.codes_per_visit_mean

    records = []
    pid = 0
    for cohort in cohorts:
        cohort_codes = np.array(cohort.code_set)
        for _ in range(config.patients_per_cohort):
            n_chronic = 1 + rng.poisson(max(chronic_mean - 1.0, 0.0))
            n_chronic = min(n_chronic, len(cohort_codes))
            chronic = rng.choice(cohort_codes, size=n_chronic, replace=False)
            n_visits = int(np.clip(rng.geometric(1.0 / config.visit_count_mean), 1, config.max_visits))
            visits = []
            for _ in range(n_visits):
                active = set(int(c) for c in chronic)
                for _ in range(rng.poisson(transient_mean)):
                    if len(background_pool) > 0 and rng.random() < config.background_rate:
                        pool = background_pool
                    else:
                        pool = cohort_codes
                    free = [int(c) for c in pool if int(c) not in active]
                    if free:
                        active.add(free[rng.integers(len(free))])
                visits.append(VisitVector(tuple(sorted(active))))
            records.append(
                PatientRecord(patient_id=f"p{pid:05d}", visits=tuple(visits), cohort_label=cohort.label)
            )
            pid += 1

    corpus = Corpus(vocabulary=vocab, records=records, cohorts=cohorts)
    corpus.validate()
    return corpus


# ---------------------------------------------------------------------------
# persistence: `ddv-corpus v1` line format


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus in the ddv-corpus v1 text format."""
    lines = [f"ddv-corpus v1 d={corpus.vocabulary.d} K={len(corpus.cohorts)}"]
    for cohort in corpus.cohorts:
        lines.append("#cohort\t%d\t%s" % (cohort.label, ",".join(str(c) for c in cohort.code_set)))
    for rec in corpus.records:
        visits = "|".join(",".join(str(c) for c in v.active_codes) for v in rec.visits)
        label = "-" if rec.cohort_label is None else str(rec.cohort_label)
        lines.append(f"{rec.patient_id}\t{label}\t{visits}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_corpus(path: str | Path) -> Corpus:
    """Read a ddv-corpus v1 file; raises ParseError / ValidationError, never returns a partial corpus."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file, expected ddv-corpus header", 1)
    header = lines[0].split()
    if len(header) != 4 or header[0] != "ddv-corpus" or header[1] != "v1":
        raise ParseError("expected header 'ddv-corpus v1 d=<d> K=<K>'", 1)
    try:
        d = int(header[2].removeprefix("d="))
        n_cohorts = int(header[3].removeprefix("K="))
    except ValueError:
        raise ParseError("malformed d=/K= header fields", 1) from None

    cohorts = []
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if parts[0] == "#cohort":
            if len(parts) != 3:
                raise ParseError("cohort line needs '#cohort\\t<label>\\t<codes>'", lineno)
            try:
                label = int(parts[1])
                code_set = tuple(int(c) for c in parts[2].split(",")) if parts[2] else ()
            except ValueError:
                raise ParseError("non-integer cohort field", lineno) from None
            cohorts.append(Cohort(label=label, code_set=code_set))
            continue
        if len(parts) != 3:
            raise ParseError("record line needs '<id>\\t<label>\\t<visits>'", lineno)
        patient_id, label_str, visits_str = parts
        try:
            label = None if label_str == "-" else int(label_str)
        except ValueError:
            raise ParseError(f"bad cohort label {label_str!r}", lineno) from None
        visits = []
        for visit_str in visits_str.split("|"):
            if not visit_str:
                raise ParseError("empty visit", lineno)
            try:
                codes = tuple(int(c) for c in visit_str.split(","))
            except ValueError:
                raise ParseError(f"non-integer code in visit {visit_str!r}", lineno) from None
            try:
                visits.append(VisitVector(codes))
            except ValidationError as exc:
                raise ParseError(str(exc), lineno) from None
        try:
            records.append(PatientRecord(patient_id, tuple(visits), label))
        except ValidationError as exc:
            raise ParseError(str(exc), lineno) from None

    if len(cohorts) != n_cohorts:
        raise ParseError(f"header promises K={n_cohorts} cohorts, found {len(cohorts)}", 1)
    vocab = CodeVocabulary(tuple(f"c{i:03d}" for i in range(d)))
    corpus = Corpus(vocabulary=vocab, records=records, cohorts=cohorts)
    corpus.validate()
    return corpus


# ---------------------------------------------------------------------------
# array packing shared by the training code


def visits_matrix(records: Iterable[PatientRecord], d: int) -> np.ndarray:
    """Stack every visit of every record into one (n_visits, d) multi-hot matrix."""
    rows = [v.multihot(d) for rec in records for v in rec.visits]
    return np.vstack(rows) if rows else np.zeros((0, d))

def record_offsets(records: Sequence[PatientRecord]) -> np.ndarray:
    """CSR-style offsets delimiting each record's visits inside visits_matrix output."""
    lengths = [len(r.visits) for r in records]
    return np.concatenate([[0], np.cumsum(lengths)]).astype(np.int64)
