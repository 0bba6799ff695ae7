"""One-pass graph neural scorers trained without labels.

Message passing runs on the reversed input graph so that being covered
flows back toward potential coverers. Three layer types share one kernel:

- grat: attention normalized per SOURCE (each node splits its weight over
  the nodes that would cover it),
- gat: attention normalized per DESTINATION (classic incoming softmax),
- gcn: mean aggregation over predecessors plus self, no attention.

Gradients are exact and hand-derived (reverse mode through segment
softmax, ReLU, and the probabilistic coverage loss); no autodiff
framework is involved.
"""

from __future__ import annotations

import copy
import math
import struct
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import Graph, coverage_rate, reverse
from .solvers import CoverageIndex, load_or_build_index, top_k_by_score

EPS = 1e-7

DEFAULT_K_EVAL = {1: 64, 2: 16, 3: 4}

_ARCH_TAGS = {"grat": 0, "gat": 1, "gcn": 2}
_ACT_TAGS = {"relu": 0, "sigmoid": 1, "identity": 2}


# --- parameters ---------------------------------------------------------------

@dataclass
class LayerParams:
    """W: (n_out, n_in); b: (n_out,); a: (2*n_in,) for attention layers."""

    W: np.ndarray
    b: np.ndarray
    a: np.ndarray | None = None

    @property
    def n_in(self) -> int:
        return int(self.W.shape[1])

    @property
    def n_out(self) -> int:
        return int(self.W.shape[0])

    def count(self) -> int:
        return self.W.size + self.b.size + (self.a.size if self.a is not None else 0)

    def zeros_like(self) -> "LayerParams":
        return LayerParams(
            W=np.zeros_like(self.W),
            b=np.zeros_like(self.b),
            a=None if self.a is None else np.zeros_like(self.a),
        )


@dataclass
class Model:
    arch: str
    layers: list[LayerParams]
    hidden_activation: str = "relu"
    output_activation: str = "sigmoid"
    input_dim: int = 1

    def __post_init__(self):
        if self.arch not in _ARCH_TAGS:
            raise ValueError(f"unknown architecture {self.arch!r}")
        dims = [self.input_dim] + [p.n_out for p in self.layers]
        for i, p in enumerate(self.layers):
            if p.n_in != dims[i]:
                raise ValueError(f"layer {i} expects input dim {p.n_in}, chain gives {dims[i]}")
        if self.layers and self.layers[-1].n_out != 1:
            raise ValueError("final layer must map to a single score")

    def parameter_count(self) -> int:
        return sum(p.count() for p in self.layers)


def init_model(arch: str, input_dim: int = 1, hidden: tuple = (32, 32), seed: int = 0) -> Model:
    """Glorot-uniform weights, zero biases, seeded."""
    rng = np.random.Generator(np.random.PCG64(seed))
    dims = [input_dim, *hidden, 1]
    layers = []
    attention = arch in ("grat", "gat")
    for n_in, n_out in zip(dims[:-1], dims[1:]):
        s = np.sqrt(6.0 / (n_in + n_out))
        W = rng.uniform(-s, s, size=(n_out, n_in))
        b = np.zeros(n_out)
        a = None
        if attention:
            sa = np.sqrt(6.0 / (2 * n_in + 1))
            a = rng.uniform(-sa, sa, size=2 * n_in)
        layers.append(LayerParams(W=W, b=b, a=a))
    return Model(arch=arch, layers=layers, input_dim=input_dim)


# --- message graph and segment primitives -------------------------------------

class MessageGraph:
    """Arc arrays of the graph message passing actually runs on.

    Arcs are stored destination-major (sorted by (dst, src)) because the
    aggregation step groups by destination; `perm_src` reorders arcs to
    source-major for per-source softmax grouping.
    """

    def __init__(self, n: int, src: np.ndarray, dst: np.ndarray):
        self.n = n
        order = np.lexsort((src, dst))
        self.src = src[order]
        self.dst = dst[order]
        self.m = int(src.size)
        self.indptr_dst = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.dst, minlength=n), out=self.indptr_dst[1:])
        self.perm_src = np.lexsort((self.dst, self.src))
        self.indptr_src = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.src, minlength=n), out=self.indptr_src[1:])
        self.dst_counts = np.diff(self.indptr_dst)

    @classmethod
    def from_graph(cls, g: Graph, add_self_loops: bool) -> "MessageGraph":
        src, dst = g.arcs()
        if add_self_loops:
            loop = np.arange(g.n, dtype=np.int64)
            src = np.concatenate([src, loop])
            dst = np.concatenate([dst, loop])
        return cls(g.n, src, dst)


def _seg_sum_rows(x: np.ndarray, indptr: np.ndarray) -> np.ndarray:
    """Per-group row sums; groups may be empty."""
    counts = np.diff(indptr)
    out = np.zeros((counts.size,) + x.shape[1:], dtype=x.dtype)
    nz = counts > 0
    if x.shape[0] and nz.any():
        out[nz] = np.add.reduceat(x, indptr[:-1][nz], axis=0)
    return out


def _seg_softmax(x: np.ndarray, indptr: np.ndarray) -> np.ndarray:
    """Softmax within each contiguous group; empty groups contribute nothing."""
    counts = np.diff(indptr)
    nz = counts > 0
    gmax = np.zeros(counts.size, dtype=x.dtype)
    if x.size and nz.any():
        gmax[nz] = np.maximum.reduceat(x, indptr[:-1][nz])
    owner = np.repeat(np.arange(counts.size), counts)
    y = np.exp(x - gmax[owner])
    denom = _seg_sum_rows(y[:, None], indptr)[:, 0]
    return y / denom[owner]


def _seg_softmax_backward(alpha: np.ndarray, galpha: np.ndarray, indptr: np.ndarray) -> np.ndarray:
    """d(softmax)/dx pullback: g_x = alpha * (g_alpha - sum_group(alpha*g_alpha))."""
    counts = np.diff(indptr)
    owner = np.repeat(np.arange(counts.size), counts)
    dots = _seg_sum_rows((alpha * galpha)[:, None], indptr)[:, 0]
    return alpha * (galpha - dots[owner])


def _act(name: str, x: np.ndarray) -> np.ndarray:
    if name == "relu":
        return np.maximum(x, 0.0)
    if name == "sigmoid":
        # overflow-safe in both tails
        out = np.empty_like(x)
        pos = x >= 0
        out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
        ex = np.exp(x[~pos])
        out[~pos] = ex / (1.0 + ex)
        return out
    if name == "identity":
        return x
    raise ValueError(f"unknown activation {name!r}")


def _dact(name: str, pre: np.ndarray, post: np.ndarray) -> np.ndarray:
    if name == "relu":
        return (pre > 0.0).astype(pre.dtype)
    if name == "sigmoid":
        return post * (1.0 - post)
    if name == "identity":
        return np.ones_like(pre)
    raise ValueError(f"unknown activation {name!r}")


# --- layer kernels -------------------------------------------------------------

def _attn_forward(params: LayerParams, msg: MessageGraph, h: np.ndarray,
                  normalize: str, act: str):
    if h.shape[1] != params.n_in:
        raise ValueError(f"feature dim {h.shape[1]} does not match layer n_in {params.n_in}")
    F = params.n_in
    a1, a2 = params.a[:F], params.a[F:]
    t = h[msg.src] @ a1 + h[msg.dst] @ a2
    r = np.maximum(t, 0.0)
    if normalize == "src":
        rs = r[msg.perm_src]
        alpha_s = _seg_softmax(rs, msg.indptr_src)
        alpha = np.empty_like(alpha_s)
        alpha[msg.perm_src] = alpha_s
    else:
        alpha = _seg_softmax(r, msg.indptr_dst)
    z = h @ params.W.T
    mcol = alpha[:, None] * z[msg.src]
    s = _seg_sum_rows(mcol, msg.indptr_dst)
    pre = s + params.b
    out = _act(act, pre)
    cache = (h, z, t, alpha, pre, out, normalize, act)
    return out, cache


def _attn_backward(params: LayerParams, msg: MessageGraph, gout: np.ndarray, cache):
    h, z, t, alpha, pre, out, normalize, act = cache
    F = params.n_in
    a1, a2 = params.a[:F], params.a[F:]
    gpre = gout * _dact(act, pre, out)
    gb = gpre.sum(axis=0)
    gm = gpre[msg.dst]
    galpha = np.einsum("ij,ij->i", gm, z[msg.src])
    gz = np.zeros_like(z)
    np.add.at(gz, msg.src, alpha[:, None] * gm)
    if normalize == "src":
        ga_s = _seg_softmax_backward(alpha[msg.perm_src], galpha[msg.perm_src], msg.indptr_src)
        gr = np.empty_like(ga_s)
        gr[msg.perm_src] = ga_s
    else:
        gr = _seg_softmax_backward(alpha, galpha, msg.indptr_dst)
    gt = gr * (t > 0.0)
    ga = np.concatenate([gt @ h[msg.src], gt @ h[msg.dst]])
    gW = gz.T @ h
    gh = gz @ params.W
    np.add.at(gh, msg.src, gt[:, None] * a1)
    np.add.at(gh, msg.dst, gt[:, None] * a2)
    return gh, LayerParams(W=gW, b=gb, a=ga)


def _gcn_forward(params: LayerParams, msg: MessageGraph, h: np.ndarray, act: str):
    if h.shape[1] != params.n_in:
        raise ValueError(f"feature dim {h.shape[1]} does not match layer n_in {params.n_in}")
    counts = np.maximum(msg.dst_counts, 1)
    mean = _seg_sum_rows(h[msg.src], msg.indptr_dst) / counts[:, None]
    pre = mean @ params.W.T + params.b
    out = _act(act, pre)
    cache = (h, mean, pre, out, act)
    return out, cache


def _gcn_backward(params: LayerParams, msg: MessageGraph, gout: np.ndarray, cache):
    h, mean, pre, out, act = cache
    counts = np.maximum(msg.dst_counts, 1)
    gpre = gout * _dact(act, pre, out)
    gb = gpre.sum(axis=0)
    gW = gpre.T @ mean
    gmean = gpre @ params.W
    gh = np.zeros_like(h)
    np.add.at(gh, msg.src, (gmean / counts[:, None])[msg.dst])
    return gh, LayerParams(W=gW, b=gb, a=None)


# --- public layer ops (operate literally on the given graph's arcs) -----------

def init_features(g: Graph, dim: int = 1) -> np.ndarray:
    """Identical constant rows: topology is the only input signal."""
    return np.ones((g.n, dim))


def grat_layer(params: LayerParams, g_rev: Graph, h: np.ndarray,
               activation: str = "sigmoid") -> np.ndarray:
    msg = MessageGraph.from_graph(g_rev, add_self_loops=False)
    out, _ = _attn_forward(params, msg, h, "src", activation)
    return out


def gat_layer(params: LayerParams, g_rev: Graph, h: np.ndarray,
              activation: str = "sigmoid") -> np.ndarray:
    msg = MessageGraph.from_graph(g_rev, add_self_loops=False)
    out, _ = _attn_forward(params, msg, h, "dst", activation)
    return out


def gcn_layer(params: LayerParams, g_rev: Graph, h: np.ndarray,
              activation: str = "sigmoid") -> np.ndarray:
    # mean over predecessors and the node itself
    msg = MessageGraph.from_graph(g_rev, add_self_loops=True)
    out, _ = _gcn_forward(params, msg, h, activation)
    return out


def attention_alphas(params: LayerParams, msg: MessageGraph, h: np.ndarray,
                     normalize: str) -> np.ndarray:
    """Per-arc attention weights in the message graph's dst-major arc order.

    Diagnostic used to assert normalization invariants."""
    _, cache = _attn_forward(params, msg, h, normalize, "identity")
    return cache[3]


# --- full network --------------------------------------------------------------

def message_graph(g: Graph) -> MessageGraph:
    """The graph inference runs on: reversed arcs plus a self-loop everywhere."""
    return MessageGraph.from_graph(reverse(g), add_self_loops=True)


def _forward_cached(model: Model, msg: MessageGraph, h0: np.ndarray):
    h = h0
    caches = []
    last = len(model.layers) - 1
    for i, params in enumerate(model.layers):
        act = model.output_activation if i == last else model.hidden_activation
        if model.arch == "gcn":
            h, cache = _gcn_forward(params, msg, h, act)
        else:
            normalize = "src" if model.arch == "grat" else "dst"
            h, cache = _attn_forward(params, msg, h, normalize, act)
        caches.append(cache)
    return h[:, 0], caches


def forward(model: Model, g: Graph, msg: MessageGraph | None = None) -> np.ndarray:
    """Score every vertex in one pass. `g` is the original graph; reversal
    and self-loop handling happen here. Returns scores in (0, 1)."""
    if msg is None:
        msg = message_graph(g)
    scores, _ = _forward_cached(model, msg, init_features(g, model.input_dim))
    return scores


# --- loss ----------------------------------------------------------------------

def loss(p: np.ndarray, idx: CoverageIndex, lam: float) -> float:
    """Expected uncovered count plus lam * expected seed count.

    `idx` must hold, per vertex u, the ids v whose selection would cover u
    (the d-hop coverage sets of the reversed graph). Products are computed
    in log space with scores clamped to [EPS, 1-EPS].
    """
    value, _ = _loss_and_score_grad(p, idx, lam)
    return value


def _loss_and_score_grad(p: np.ndarray, idx: CoverageIndex, lam: float):
    pc = np.clip(p, EPS, 1.0 - EPS)
    logq = np.log1p(-pc)
    counts = np.diff(idx.indptr)
    owner = np.repeat(np.arange(idx.n), counts)
    S = np.bincount(owner, weights=logq[idx.flat], minlength=idx.n)
    P = np.exp(S)
    value = float(P.sum() + lam * pc.sum())
    # dL/dp_v = lam - (sum of P_u over u covered by v) / (1 - p_v),
    # evaluated at the clamped point but propagated straight through the
    # clamp: the clamp is a numerical guard, and zeroing the gradient
    # inside it would permanently freeze any score that saturates
    T = np.bincount(idx.flat, weights=P[owner], minlength=idx.n)
    gp = lam - T / (1.0 - pc)
    return value, gp


def backward(model: Model, g: Graph, idx: CoverageIndex, lam: float,
             msg: MessageGraph | None = None):
    """Loss and exact gradients for every layer parameter.

    Runs the forward pass (caching intermediates), then reverse mode
    through the loss, every activation, aggregation, and softmax.
    Returns (loss_value, [LayerParams-shaped gradients per layer]).
    """
    if msg is None:
        msg = message_graph(g)
    scores, caches = _forward_cached(model, msg, init_features(g, model.input_dim))
    value, gp = _loss_and_score_grad(scores, idx, lam)
    gh = gp[:, None]
    grads: list[LayerParams] = [None] * len(model.layers)  # type: ignore[list-item]
    for i in range(len(model.layers) - 1, -1, -1):
        if model.arch == "gcn":
            gh, glayer = _gcn_backward(model.layers[i], msg, gh, caches[i])
        else:
            gh, glayer = _attn_backward(model.layers[i], msg, gh, caches[i])
        grads[i] = glayer
    return value, grads


# --- optimizers ----------------------------------------------------------------

def sgd_step(model: Model, grads: list[LayerParams], lr: float) -> None:
    for p, gp in zip(model.layers, grads):
        p.W -= lr * gp.W
        p.b -= lr * gp.b
        if p.a is not None:
            p.a -= lr * gp.a


class AdamState:
    """Standard Adam with bias correction."""

    def __init__(self, model: Model, lr: float, beta1: float = 0.9,
                 beta2: float = 0.999, eps: float = 1e-8):
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.t = 0
        self.m = [p.zeros_like() for p in model.layers]
        self.v = [p.zeros_like() for p in model.layers]

    def step(self, model: Model, grads: list[LayerParams]) -> None:
        self.t += 1
        b1c = 1.0 - self.beta1 ** self.t
        b2c = 1.0 - self.beta2 ** self.t
        for p, gp, m, v in zip(model.layers, grads, self.m, self.v):
            for name in ("W", "b", "a"):
                g = getattr(gp, name)
                if g is None:
                    continue
                mi, vi, arr = getattr(m, name), getattr(v, name), getattr(p, name)
                mi *= self.beta1
                mi += (1.0 - self.beta1) * g
                vi *= self.beta2
                vi += (1.0 - self.beta2) * g * g
                arr -= self.lr * (mi / b1c) / (np.sqrt(vi / b2c) + self.eps)


# --- training ------------------------------------------------------------------

@dataclass
class TrainConfig:
    arch: str = "grat"
    d: int = 2
    k_eval: int | None = None
    lr: float = 3.0
    max_epochs: int = 20
    patience: int = 5
    lam: float = 1.0
    seed: int = 0
    optimizer: str = "sgd"
    hidden: tuple = (32, 32)
    input_dim: int = 1
    cache_dir: object = None

    def resolved_k_eval(self) -> int:
        return self.k_eval if self.k_eval is not None else DEFAULT_K_EVAL[self.d]


@dataclass
class TrainResult:
    model: Model
    val_history: list[float] = field(default_factory=list)
    best_epoch: int = 0
    epochs_run: int = 0


def _split(graphs: list[Graph]) -> tuple[list[Graph], list[Graph]]:
    """Last quarter (at least one graph) held out for validation."""
    if len(graphs) < 2:
        raise ValueError("training needs at least two graphs")
    n_val = max(1, len(graphs) // 4)
    return graphs[:-n_val], graphs[-n_val:]


def _equilibrium_bias(nbar: float, lam: float) -> float:
    """Output bias whose uniform score is a stationary point of the loss.

    When every vertex is covered by about `nbar` candidates and all scores
    share one value p, the penalty pull `lam` balances the coverage push at
    p* = 1 - exp(ln(lam/nbar) / (nbar-1)). Starting the output bias at
    logit(p*) keeps the first steps away from both failure modes: scores
    slamming into the clamp floor when the coverage term dominates, and a
    vanishing sigmoid slope when p starts far below p*.
    """
    if nbar <= 1.0 or lam >= nbar:
        return 0.0
    p = 1.0 - math.exp(math.log(lam / nbar) / (nbar - 1.0))
    p = min(max(p, 1e-4), 1.0 - 1e-4)
    return math.log(p / (1.0 - p))


def _warm_start(model: Model, prepared: list, config: TrainConfig) -> None:
    """Reshape the fresh model so gradient descent starts productively.

    Hidden biases get spread uniformly so ReLU units activate at distinct
    thresholds (a piecewise basis instead of one shared direction); the
    output row is zeroed so initial scores are uniform rather than a random
    projection whose sign the optimizer may spend epochs undoing; and the
    output bias is set so that uniform starting score sits at the loss
    equilibrium for the observed mean cover-set size.
    """
    ss = np.random.SeedSequence((config.seed, 0x7A12))
    rng = np.random.default_rng(np.random.PCG64(ss))
    for p in model.layers[:-1]:
        p.b[:] = rng.uniform(-0.5, 0.5, size=p.b.shape)
    out = model.layers[-1]
    out.W[:] = 0.0
    nbar = float(np.mean([idx.entries / g.n for g, _, idx in prepared]))
    out.b[:] = _equilibrium_bias(nbar, config.lam)


def train(config: TrainConfig, graphs: list[Graph],
          eval_fn: Callable[[Model, int], float] | None = None) -> TrainResult:
    """Full-batch step per training graph per epoch, in fixed graph order.

    After each epoch the mean validation coverage at k_eval is computed
    from a single forward pass per graph; the best checkpoint is kept and
    training stops once `patience` epochs pass without strict improvement.
    `eval_fn` replaces the validation computation when given (testing hook).
    """
    if config.d < 1:
        raise ValueError("d must be >= 1")
    train_graphs, val_graphs = _split(graphs)
    model = init_model(config.arch, config.input_dim, config.hidden, config.seed)

    prepared = []
    for g in train_graphs:
        idx = load_or_build_index(reverse(g), config.d, config.cache_dir)
        prepared.append((g, message_graph(g), idx))
    val_prepared = [(g, message_graph(g)) for g in val_graphs]
    _warm_start(model, prepared, config)

    k_eval = config.resolved_k_eval()

    def validate(m: Model, epoch: int) -> float:
        if eval_fn is not None:
            return eval_fn(m, epoch)
        rates = []
        for g, msg in val_prepared:
            p = forward(m, g, msg)
            seeds = top_k_by_score(p, min(k_eval, g.n))
            rates.append(coverage_rate(g, seeds, config.d))
        return float(np.mean(rates))

    adam = AdamState(model, config.lr) if config.optimizer == "adam" else None
    best_val = -np.inf
    best_model = copy.deepcopy(model)
    best_epoch = 0
    bad = 0
    history: list[float] = []
    epochs_run = 0

    for epoch in range(1, config.max_epochs + 1):
        epochs_run = epoch
        for g, msg, idx in prepared:
            _, grads = backward(model, g, idx, config.lam, msg)
            # per-vertex mean gradient: keeps the step size meaningful
            # across graph sizes (the loss itself is a sum over vertices)
            inv_n = 1.0 / g.n
            for gl in grads:
                gl.W *= inv_n
                gl.b *= inv_n
                if gl.a is not None:
                    gl.a *= inv_n
            if adam is not None:
                adam.step(model, grads)
            else:
                sgd_step(model, grads, config.lr)
        val = validate(model, epoch)
        history.append(val)
        if val > best_val:
            best_val = val
            best_model = copy.deepcopy(model)
            best_epoch = epoch
            bad = 0
        else:
            bad += 1
            if bad >= config.patience:
                break

    return TrainResult(model=best_model, val_history=history,
                       best_epoch=best_epoch, epochs_run=epochs_run)


# --- serialization ---------------------------------------------------------------

_MAGIC = b"KDCM"
_VERSION = 1


def save_model(model: Model, path) -> None:
    """Versioned little-endian binary: header, layer dims, then f64 params
    in W, b, a order per layer."""
    blob = bytearray()
    blob += _MAGIC
    blob += struct.pack("<I", _VERSION)
    blob += struct.pack(
        "<BBBB",
        _ARCH_TAGS[model.arch],
        _ACT_TAGS[model.hidden_activation],
        _ACT_TAGS[model.output_activation],
        0,
    )
    blob += struct.pack("<II", len(model.layers), model.input_dim)
    for p in model.layers:
        blob += struct.pack("<IIB", p.n_in, p.n_out, int(p.a is not None))
    for p in model.layers:
        blob += np.ascontiguousarray(p.W, dtype="<f8").tobytes()
        blob += np.ascontiguousarray(p.b, dtype="<f8").tobytes()
        if p.a is not None:
            blob += np.ascontiguousarray(p.a, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(bytes(blob))


def load_model(path) -> Model:
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != _MAGIC:
        raise ValueError(f"{path}: not a model file (bad magic bytes)")
    (version,) = struct.unpack_from("<I", blob, 4)
    if version != _VERSION:
        raise ValueError(f"{path}: unsupported model format version {version}")
    arch_tag, hact_tag, oact_tag, _ = struct.unpack_from("<BBBB", blob, 8)
    n_layers, input_dim = struct.unpack_from("<II", blob, 12)
    tags_to_arch = {v: k for k, v in _ARCH_TAGS.items()}
    tags_to_act = {v: k for k, v in _ACT_TAGS.items()}
    try:
        arch = tags_to_arch[arch_tag]
        hact, oact = tags_to_act[hact_tag], tags_to_act[oact_tag]
    except KeyError:
        raise ValueError(f"{path}: unknown architecture or activation tag") from None
    off = 20
    shapes = []
    for _ in range(n_layers):
        n_in, n_out, has_a = struct.unpack_from("<IIB", blob, off)
        off += 9
        shapes.append((n_in, n_out, bool(has_a)))
    layers = []
    for n_in, n_out, has_a in shapes:
        W = np.frombuffer(blob, dtype="<f8", count=n_in * n_out, offset=off).reshape(n_out, n_in).copy()
        off += 8 * n_in * n_out
        b = np.frombuffer(blob, dtype="<f8", count=n_out, offset=off).copy()
        off += 8 * n_out
        a = None
        if has_a:
            a = np.frombuffer(blob, dtype="<f8", count=2 * n_in, offset=off).copy()
            off += 16 * n_in
        layers.append(LayerParams(W=W, b=b, a=a))
    if off != len(blob):
        raise ValueError(f"{path}: trailing or missing bytes (corrupt file)")
    return Model(arch=arch, layers=layers, hidden_activation=hact,
                 output_activation=oact, input_dim=input_dim)
