"""Two-stage signature learning for longitudinal records.

Stage one compresses each sparse multi-hot visit vector with a two-layer
perceptron autoencoder trained as d parallel binary classifiers under a
weighted cross-entropy (positives up-weighted so the all-zeros shortcut is
unattractive).  Stage two runs a gated recurrent sequence autoencoder over the
per-visit embeddings, handling variable-length histories; its final hidden
state is the patient embedding.  Published signatures add i.i.d. Gaussian
noise to that embedding at creation time.

Training is plain momentum SGD, fully deterministic per seed.  After each
epoch the full-data loss is evaluated; an epoch that raises it is rolled back
and the learning rate halved, so the recorded loss history is non-increasing.
Decoder parameters are treated as secret: model files only include them when
explicitly asked, and such files are flagged SECRET.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import kernels
from .corpus import Corpus, PatientRecord, VisitVector, record_offsets, visits_matrix


class TrainingError(RuntimeError):
    """Training diverged; carries the epoch at which the loss went non-finite."""

    def __init__(self, message: str, epoch: int):
        super().__init__(f"epoch {epoch}: {message}")
        self.epoch = epoch


@dataclass(frozen=True)
class LossWeights:
    positive_weight: float = 3.0
    negative_weight: float = 1.0

    def __post_init__(self):
        if self.positive_weight <= 0 or self.negative_weight <= 0:
            raise ValueError("loss weights must be positive")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 60
    lr: float = 0.5
    momentum: float = 0.9
    batch_size: int | None = 64
    hidden: int = 48
    activation: str = "tanh"  # "tanh" | "linear" hidden/latent activation
    loss_weights: LossWeights = LossWeights()

    def __post_init__(self):
        if self.activation not in ("tanh", "linear"):
            raise ValueError(f"unknown activation {self.activation!r}")
        if self.epochs < 0 or self.lr <= 0:
            raise ValueError("epochs must be >= 0 and lr > 0")


@dataclass
class VisitEncoderModel:
    """Visit-level autoencoder; (W1,b1,W2,b2) encode, (W3,b3,W4,b4) decode (secret)."""

    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray
    W3: np.ndarray | None
    b3: np.ndarray | None
    W4: np.ndarray | None
    b4: np.ndarray | None
    d: int
    q: int
    activation: str
    loss_weights: LossWeights
    seed: int
    model_version: int = 1
    loss_history: list[float] = field(default_factory=list)

    @property
    def has_decoder(self) -> bool:
        return self.W3 is not None

    def encoder_params(self):
        return [self.W1, self.b1, self.W2, self.b2]

    def decoder_params(self):
        if not self.has_decoder:
            raise ValueError("model was loaded without its (secret) decoder")
        return [self.W3, self.b3, self.W4, self.b4]


@dataclass
class PatientEncoderModel:
    """Sequence autoencoder; (We,Ue,be) encode, (Wd,Ud,bd,Wo,bo) decode (secret)."""

    We: np.ndarray
    Ue: np.ndarray
    be: np.ndarray
    Wd: np.ndarray | None
    Ud: np.ndarray | None
    bd: np.ndarray | None
    Wo: np.ndarray | None
    bo: np.ndarray | None
    q: int
    p: int
    seed: int
    model_version: int = 1
    loss_history: list[float] = field(default_factory=list)

    @property
    def has_decoder(self) -> bool:
        return self.Wd is not None

    def encoder_params(self):
        return [self.We, self.Ue, self.be]

    def decoder_params(self):
        if not self.has_decoder:
            raise ValueError("model was loaded without its (secret) decoder")
        return [self.Wd, self.Ud, self.bd, self.Wo, self.bo]


@dataclass(frozen=True)
class Signature:
    """Published patient embedding, Gaussian-noised at creation."""

    vector: np.ndarray
    noise_sigma: float
    model_version: int

    def __post_init__(self):
        if not np.all(np.isfinite(self.vector)):
            raise ValueError("signature vector must be finite")


def _uniform_init(rng: np.random.Generator, fan_in: int, shape) -> np.ndarray:
    bound = 1.0 / np.sqrt(fan_in)
    return rng.uniform(-bound, bound, shape)


def _act(x: np.ndarray, kind: str) -> np.ndarray:
    return np.tanh(x) if kind == "tanh" else x


def _act_deriv(a: np.ndarray, kind: str) -> np.ndarray:
    return 1.0 - a * a if kind == "tanh" else np.ones_like(a)


def _sigmoid(v: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(v, -60.0, 60.0)))


def _bce(P: np.ndarray, X: np.ndarray, w: np.ndarray) -> float:
    pc = np.clip(P, 1e-12, 1.0 - 1e-12)
    return float(np.sum(w * -(X * np.log(pc) + (1.0 - X) * np.log(1.0 - pc))) / X.size)


class _MomentumSGD:
    """Momentum SGD with epoch-level rollback: an epoch that raises the full-data
    loss is undone and the learning rate halved, so recorded losses never increase."""

    def __init__(self, params: list[np.ndarray], lr: float, momentum: float):
        self.params = params
        self.lr = lr
        self.momentum = momentum
        self.vel = [np.zeros_like(a) for a in params]
        self._snapshot = [a.copy() for a in params]
        self.best_loss = np.inf

    def step(self, grads: list[np.ndarray]) -> None:
        for a, v, g in zip(self.params, self.vel, grads):
            v *= self.momentum
            v -= self.lr * g
            a += v

    def end_epoch(self, loss: float, epoch: int) -> float:
        """Accept or roll back the epoch; returns the recorded (accepted) loss."""
        if not np.isfinite(loss):
            raise TrainingError("non-finite training loss", epoch)
        if loss > self.best_loss + 1e-9:
            for a, s in zip(self.params, self._snapshot):
                a[...] = s
            for v in self.vel:
                v[...] = 0.0
            self.lr *= 0.5
            return self.best_loss
        self.best_loss = loss
        for s, a in zip(self._snapshot, self.params):
            s[...] = a
        return loss


# ---------------------------------------------------------------------------
# visit-level autoencoder


def _visit_forward(X, params, kind):
    W1, b1, W2, b2, W3, b3, W4, b4 = params
    H1 = _act(X @ W1 + b1, kind)
    Z = _act(H1 @ W2 + b2, kind)
    H2 = _act(Z @ W3 + b3, kind)
    P = _sigmoid(H2 @ W4 + b4)
    return H1, Z, H2, P


def _visit_loss_grads(X, params, kind, weights: LossWeights):
    W1, b1, W2, b2, W3, b3, W4, b4 = params
    H1, Z, H2, P = _visit_forward(X, params, kind)
    w = weights.negative_weight + (weights.positive_weight - weights.negative_weight) * X
    loss = _bce(P, X, w)
    dlogits = w * (P - X) / X.size
    gW4 = H2.T @ dlogits
    gb4 = dlogits.sum(axis=0)
    dH2 = dlogits @ W4.T * _act_deriv(H2, kind)
    gW3 = Z.T @ dH2
    gb3 = dH2.sum(axis=0)
    dZ = dH2 @ W3.T * _act_deriv(Z, kind)
    gW2 = H1.T @ dZ
    gb2 = dZ.sum(axis=0)
    dH1 = dZ @ W2.T * _act_deriv(H1, kind)
    gW1 = X.T @ dH1
    gb1 = dH1.sum(axis=0)
    return loss, [gW1, gb1, gW2, gb2, gW3, gb3, gW4, gb4]


def train_visit_autoencoder(
    corpus: Corpus, q: int, hyper: TrainConfig, seed: int
) -> VisitEncoderModel:
    """Train the visit-level autoencoder on every visit in the corpus."""
    if not corpus.records:
        raise ValueError("corpus has no records")
    d = corpus.vocabulary.d
    if not 1 <= q <= d:
        raise ValueError(f"latent dim q={q} must lie in [1, {d}]")
    X = visits_matrix(corpus.records, d)
    rng = np.random.default_rng(seed)
    h = hyper.hidden
    params = [
        _uniform_init(rng, d, (d, h)),
        np.zeros(h),
        _uniform_init(rng, h, (h, q)),
        np.zeros(q),
        _uniform_init(rng, q, (q, h)),
        np.zeros(h),
        _uniform_init(rng, h, (h, d)),
        np.zeros(d),
    ]
    opt = _MomentumSGD(params, hyper.lr, hyper.momentum)
    n = X.shape[0]
    bs = n if hyper.batch_size is None else min(hyper.batch_size, n)
    history = []
    for epoch in range(hyper.epochs):
        order = rng.permutation(n)
        for start in range(0, n, bs):
            batch = X[order[start : start + bs]]
            _, grads = _visit_loss_grads(batch, params, hyper.activation, hyper.loss_weights)
            opt.step(grads)
        full_loss, _ = _visit_loss_grads(X, params, hyper.activation, hyper.loss_weights)
        history.append(opt.end_epoch(full_loss, epoch))
    W1, b1, W2, b2, W3, b3, W4, b4 = params
    return VisitEncoderModel(
        W1, b1, W2, b2, W3, b3, W4, b4,
        d=d, q=q, activation=hyper.activation, loss_weights=hyper.loss_weights,
        seed=seed, loss_history=history,
    )


def encode_visits(model: VisitEncoderModel, X: np.ndarray) -> np.ndarray:
    """Embed a batch of multi-hot visit rows into the q-dimensional latent space."""
    if X.shape[1] != model.d:
        raise ValueError(f"visit dimension {X.shape[1]} != model d={model.d}")
    H1 = _act(X @ model.W1 + model.b1, model.activation)
    return _act(H1 @ model.W2 + model.b2, model.activation)


def decode_latents(model: VisitEncoderModel, Z: np.ndarray) -> np.ndarray:
    """Map latent rows back to per-code probabilities (requires the secret decoder)."""
    W3, b3, W4, b4 = model.decoder_params()
    H2 = _act(Z @ W3 + b3, model.activation)
    return _sigmoid(H2 @ W4 + b4)


def encode_visit(model: VisitEncoderModel, visit: VisitVector) -> np.ndarray:
    if visit.active_codes and max(visit.active_codes) >= model.d:
        raise ValueError(f"visit code {max(visit.active_codes)} out of range for d={model.d}")
    return encode_visits(model, visit.multihot(model.d)[None, :])[0]


# ---------------------------------------------------------------------------
# patient-level sequence autoencoder


def _patient_params_init(rng: np.random.Generator, q: int, p: int) -> list[np.ndarray]:
    return [
        _uniform_init(rng, q, (q, 3 * p)),
        _uniform_init(rng, p, (p, 3 * p)),
        np.zeros(3 * p),
        _uniform_init(rng, q, (q, 3 * p)),
        _uniform_init(rng, p, (p, 3 * p)),
        np.zeros(3 * p),
        _uniform_init(rng, p, (p, q)),
        np.zeros(q),
    ]


def _gather_batch(G_flat, offsets, idx):
    lengths = (offsets[idx + 1] - offsets[idx]).astype(np.int64)
    sub_offsets = np.concatenate([[0], np.cumsum(lengths)]).astype(np.int64)
    rows = np.concatenate([G_flat[offsets[i] : offsets[i + 1]] for i in idx])
    return rows, sub_offsets


def _seq_loss(G_flat, offsets, params) -> float:
    We, Ue, be, Wd, Ud, bd, Wo, bo = params
    n = offsets.shape[0] - 1
    z = np.empty((n, Ue.shape[0]))
    kernels.gru_encode_batch(G_flat, offsets, We, Ue, be, z)
    y = np.empty_like(G_flat)
    lengths = (offsets[1:] - offsets[:-1]).astype(np.int64)
    kernels.gru_decode_batch(z, lengths, offsets, Wd, Ud, bd, Wo, bo, y)
    return float(np.sum((y - G_flat) ** 2) / G_flat.size)


def train_patient_autoencoder(
    corpus: Corpus,
    visit_model: VisitEncoderModel,
    p: int,
    hyper: TrainConfig,
    seed: int,
) -> PatientEncoderModel:
    """Train the recurrent sequence autoencoder on visit-embedded records."""
    if p < 1:
        raise ValueError("signature dimension p must be >= 1")
    if not corpus.records:
        raise ValueError("corpus has no records")
    q = visit_model.q
    X = visits_matrix(corpus.records, visit_model.d)
    G_flat = encode_visits(visit_model, X)
    offsets = record_offsets(corpus.records)
    rng = np.random.default_rng(seed)
    params = _patient_params_init(rng, q, p)
    opt = _MomentumSGD(params, hyper.lr, hyper.momentum)
    n = len(corpus.records)
    bs = n if hyper.batch_size is None else min(hyper.batch_size, n)
    history = []
    for epoch in range(hyper.epochs):
        order = rng.permutation(n)
        for start in range(0, n, bs):
            idx = order[start : start + bs]
            rows, sub_offsets = _gather_batch(G_flat, offsets, idx)
            grads = [np.zeros_like(a) for a in params]
            loss_sum, n_elems = kernels.seq_ae_batch_loss_grads(
                rows, sub_offsets, *params, *grads
            )
            if not np.isfinite(loss_sum):
                raise TrainingError("non-finite batch loss", epoch)
            for g in grads:
                g /= n_elems
            opt.step(grads)
        history.append(opt.end_epoch(_seq_loss(G_flat, offsets, params), epoch))
    We, Ue, be, Wd, Ud, bd, Wo, bo = params
    return PatientEncoderModel(
        We, Ue, be, Wd, Ud, bd, Wo, bo, q=q, p=p, seed=seed, loss_history=history
    )


def _record_embeddings(vmodel: VisitEncoderModel, record: PatientRecord) -> np.ndarray:
    for visit in record.visits:
        if visit.active_codes and max(visit.active_codes) >= vmodel.d:
            raise ValueError(f"record {record.patient_id} has codes outside d={vmodel.d}")
    X = visits_matrix([record], vmodel.d)
    return encode_visits(vmodel, X)


def encode_patient(
    pmodel: PatientEncoderModel, vmodel: VisitEncoderModel, record: PatientRecord
) -> np.ndarray:
    """Deterministic clean patient embedding f(record), length p."""
    G = _record_embeddings(vmodel, record)
    offsets = np.array([0, G.shape[0]], dtype=np.int64)
    z = np.empty((1, pmodel.p))
    kernels.gru_encode_batch(G, offsets, pmodel.We, pmodel.Ue, pmodel.be, z)
    return z[0]


def encode_records(
    pmodel: PatientEncoderModel, vmodel: VisitEncoderModel, records: list[PatientRecord]
) -> np.ndarray:
    """Batch: clean patient embeddings for many records, shape (n, p)."""
    X = visits_matrix(records, vmodel.d)
    G = encode_visits(vmodel, X)
    offsets = record_offsets(records)
    z = np.empty((len(records), pmodel.p))
    kernels.gru_encode_batch(G, offsets, pmodel.We, pmodel.Ue, pmodel.be, z)
    return z


def decode_patient(
    pmodel: PatientEncoderModel,
    vmodel: VisitEncoderModel,
    z: np.ndarray,
    n_visits: int,
) -> np.ndarray:
    """Decode an embedding into (n_visits, d) per-code probabilities."""
    if n_visits < 1:
        raise ValueError("n_visits must be >= 1")
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (pmodel.p,):
        raise ValueError(f"embedding must have shape ({pmodel.p},), got {z.shape}")
    Wd, Ud, bd, Wo, bo = pmodel.decoder_params()
    lengths = np.array([n_visits], dtype=np.int64)
    offsets = np.array([0, n_visits], dtype=np.int64)
    Y = np.empty((n_visits, pmodel.q))
    kernels.gru_decode_batch(z[None, :], lengths, offsets, Wd, Ud, bd, Wo, bo, Y)
    return decode_latents(vmodel, Y)


def make_signature(
    pmodel: PatientEncoderModel,
    vmodel: VisitEncoderModel,
    record: PatientRecord,
    sigma: float,
    rng: np.random.Generator,
) -> Signature:
    """Published signature: clean embedding plus fresh i.i.d. N(0, sigma^2) noise."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    z = encode_patient(pmodel, vmodel, record)
    noise = rng.normal(0.0, sigma, pmodel.p) if sigma > 0 else np.zeros(pmodel.p)
    return Signature(vector=z + noise, noise_sigma=sigma, model_version=pmodel.model_version)


# ---------------------------------------------------------------------------
# incremental (online) updates


@dataclass(frozen=True)
class OnlineUpdateConfig:
    step_size_tau: float = 0.05
    decay: float = 0.02  # tau_k = tau_0 / (1 + k * decay)
    max_halvings: int = 8

    def __post_init__(self):
        if self.step_size_tau < 0:
            raise ValueError("step size must be >= 0")


@dataclass(frozen=True)
class UpdateReport:
    tau_effective: float
    loss_before: float
    loss_after: float
    halvings: int


def incremental_update(
    pmodel: PatientEncoderModel,
    vmodel: VisitEncoderModel,
    record: PatientRecord,
    cfg: OnlineUpdateConfig,
    tau: float | None = None,
) -> tuple[PatientEncoderModel, UpdateReport]:
    """One gradient step on the record's reconstruction loss, with a line-check.

    If the step raises that record's loss the step size is halved and retried
    (up to cfg.max_halvings); a step that never improves is discarded.
    Returns a new model; the inputs are never mutated.
    """
    G = _record_embeddings(vmodel, record)
    offsets = np.array([0, G.shape[0]], dtype=np.int64)
    params = list(pmodel.encoder_params()) + list(pmodel.decoder_params())
    tau0 = cfg.step_size_tau if tau is None else tau
    loss_before = _seq_loss(G, offsets, params)
    if tau0 == 0.0:
        return pmodel, UpdateReport(0.0, loss_before, loss_before, 0)

    grads = [np.zeros_like(a) for a in params]
    loss_sum, n_elems = kernels.seq_ae_batch_loss_grads(G, offsets, *params, *grads)
    if not np.isfinite(loss_sum):
        raise TrainingError("non-finite gradient on incremental update", 0)
    for g in grads:
        g /= n_elems

    t = tau0
    for halving in range(cfg.max_halvings + 1):
        new_params = [a - t * g for a, g in zip(params, grads)]
        loss_after = _seq_loss(G, offsets, new_params)
        if loss_after <= loss_before + 1e-12:
            new_model = replace(
                pmodel,
                We=new_params[0], Ue=new_params[1], be=new_params[2],
                Wd=new_params[3], Ud=new_params[4], bd=new_params[5],
                Wo=new_params[6], bo=new_params[7],
                model_version=pmodel.model_version + 1,
                loss_history=list(pmodel.loss_history),
            )
            return new_model, UpdateReport(t, loss_before, loss_after, halving)
        t *= 0.5
    return pmodel, UpdateReport(0.0, loss_before, loss_before, cfg.max_halvings)


def run_online_training(
    pmodel: PatientEncoderModel,
    vmodel: VisitEncoderModel,
    records: list[PatientRecord],
    cfg: OnlineUpdateConfig,
    passes: int = 1,
) -> PatientEncoderModel:
    """Apply incremental updates over a record stream with the decaying step schedule."""
    k = 0
    model = pmodel
    for _ in range(passes):
        for record in records:
            tau_k = cfg.step_size_tau / (1.0 + k * cfg.decay)
            model, _ = incremental_update(model, vmodel, record, cfg, tau=tau_k)
            k += 1
    return model


# ---------------------------------------------------------------------------
# recovery evaluation (shared with the attack module)


@dataclass(frozen=True)
class RecoveryReport:
    precision: float
    recall: float
    no_positive_predictions: bool = False


def micro_precision_recall(pred: np.ndarray, truth: np.ndarray) -> RecoveryReport:
    """Micro-averaged precision/recall over all (visit, code) cells.

    Undefined precision (no positive predictions) is reported as 0 with a flag
    so downstream tables never carry NaNs.
    """
    pred = pred.astype(bool)
    truth = truth.astype(bool)
    tp = int(np.sum(pred & truth))
    n_pred = int(np.sum(pred))
    n_true = int(np.sum(truth))
    recall = tp / n_true if n_true else 0.0
    if n_pred == 0:
        return RecoveryReport(0.0, recall, True)
    return RecoveryReport(tp / n_pred, recall, False)


def recovery_eval(
    pmodel: PatientEncoderModel,
    vmodel: VisitEncoderModel,
    records: list[PatientRecord],
    signatures: np.ndarray | None = None,
    threshold: float = 0.5,
) -> RecoveryReport:
    """Encode-decode each record (or decode the given signature rows) and score
    the binarized reconstruction against the true visit codes."""
    z = encode_records(pmodel, vmodel, records) if signatures is None else signatures
    Wd, Ud, bd, Wo, bo = pmodel.decoder_params()
    offsets = record_offsets(records)
    lengths = (offsets[1:] - offsets[:-1]).astype(np.int64)
    Y = np.empty((int(offsets[-1]), pmodel.q))
    kernels.gru_decode_batch(np.asarray(z, dtype=np.float64), lengths, offsets, Wd, Ud, bd, Wo, bo, Y)
    probs = decode_latents(vmodel, Y)
    truth = visits_matrix(records, vmodel.d)
    return micro_precision_recall(probs >= threshold, truth >= 0.5)


# ---------------------------------------------------------------------------
# model persistence

_MODEL_FORMAT = "ddv-model"
_MODEL_FORMAT_VERSION = 1


def save_visit_model(model: VisitEncoderModel, path: str | Path, include_decoder: bool) -> None:
    meta = {
        "format": _MODEL_FORMAT,
        "format_version": _MODEL_FORMAT_VERSION,
        "kind": "visit",
        "secret": bool(include_decoder),
        "d": model.d,
        "q": model.q,
        "activation": model.activation,
        "positive_weight": model.loss_weights.positive_weight,
        "negative_weight": model.loss_weights.negative_weight,
        "seed": model.seed,
        "model_version": model.model_version,
    }
    arrays = {"W1": model.W1, "b1": model.b1, "W2": model.W2, "b2": model.b2}
    if include_decoder:
        arrays.update({"W3": model.W3, "b3": model.b3, "W4": model.W4, "b4": model.b4})
    np.savez(path, meta=json.dumps(meta, sort_keys=True), **arrays)


def save_patient_model(model: PatientEncoderModel, path: str | Path, include_decoder: bool) -> None:
    meta = {
        "format": _MODEL_FORMAT,
        "format_version": _MODEL_FORMAT_VERSION,
        "kind": "patient",
        "secret": bool(include_decoder),
        "q": model.q,
        "p": model.p,
        "seed": model.seed,
        "model_version": model.model_version,
    }
    arrays = {"We": model.We, "Ue": model.Ue, "be": model.be}
    if include_decoder:
        arrays.update(
            {"Wd": model.Wd, "Ud": model.Ud, "bd": model.bd, "Wo": model.Wo, "bo": model.bo}
        )
    np.savez(path, meta=json.dumps(meta, sort_keys=True), **arrays)


def read_model_meta(path: str | Path) -> dict:
    with np.load(path) as data:
        meta = json.loads(str(data["meta"]))
    if meta.get("format") != _MODEL_FORMAT:
        raise ValueError(f"{path}: not a ddv model file")
    return meta


def load_model(path: str | Path) -> VisitEncoderModel | PatientEncoderModel:
    with np.load(path) as data:
        meta = json.loads(str(data["meta"]))
        if meta.get("format") != _MODEL_FORMAT:
            raise ValueError(f"{path}: not a ddv model file")
        arrays = {k: data[k] for k in data.files if k != "meta"}
    secret = meta["secret"]
    if meta["kind"] == "visit":
        return VisitEncoderModel(
            W1=arrays["W1"], b1=arrays["b1"], W2=arrays["W2"], b2=arrays["b2"],
            W3=arrays.get("W3") if secret else None,
            b3=arrays.get("b3") if secret else None,
            W4=arrays.get("W4") if secret else None,
            b4=arrays.get("b4") if secret else None,
            d=meta["d"], q=meta["q"], activation=meta["activation"],
            loss_weights=LossWeights(meta["positive_weight"], meta["negative_weight"]),
            seed=meta["seed"], model_version=meta["model_version"],
        )
    if meta["kind"] == "patient":
        return PatientEncoderModel(
            We=arrays["We"], Ue=arrays["Ue"], be=arrays["be"],
            Wd=arrays.get("Wd") if secret else None,
            Ud=arrays.get("Ud") if secret else None,
            bd=arrays.get("bd") if secret else None,
            Wo=arrays.get("Wo") if secret else None,
            bo=arrays.get("bo") if secret else None,
            q=meta["q"], p=meta["p"], seed=meta["seed"], model_version=meta["model_version"],
        )
    raise ValueError(f"{path}: unknown model kind {meta['kind']!r}")
