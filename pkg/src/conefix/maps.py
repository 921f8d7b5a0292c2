"""Evaluatable maps R^N -> R^M: activations, dense networks, builtins.

Every map supports single-point evaluation ``m(x)`` and batched evaluation
``m.batch(X)`` on an ``(n, in_dim)`` array.  Maps are immutable and pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cones import as_vector

NONNEGATIVE_CATALOG = (
    "sigmoid", "capped_relu", "saturated_linear", "isru", "arctangent", "tanh",
    "arcsinh", "elliot", "logarithmic", "swish", "mish",
)
ACTIVATIONS = NONNEGATIVE_CATALOG + ("unimodal_sigmoid", "identity")


def _sigmoid(z):
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + np.exp(-z))


def _softplus(z):
    return np.logaddexp(0.0, z)


@dataclass(frozen=True)
class Activation:
    """Scalar activation applied componentwise.

    ``beta`` is the cap of ``capped_relu``.  With ``strict_domain`` the
    ``logarithmic`` and ``elliot`` entries reject negative inputs; otherwise
    they use their odd extensions ``sign(z) log(1 + |z|)`` and
    ``z / (1 + |z|)``.
    """

    name: str
    beta: float = 1.0
    strict_domain: bool = False

    def __post_init__(self):
        if self.name not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.name!r}")
        if self.name == "capped_relu" and not self.beta > 0:
            raise ValueError("capped_relu needs beta > 0")

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        name = self.name
        if self.strict_domain and name in ("logarithmic", "elliot") and np.any(z < 0):
            raise ValueError(f"{name} is only defined on the nonnegative half-line")
        if name == "sigmoid":
            return _sigmoid(z)
        if name == "unimodal_sigmoid":
            return _sigmoid(z) - 0.5
        if name == "capped_relu":
            return np.minimum(np.maximum(z, 0.0), self.beta)
        if name == "saturated_linear":
            return np.clip(z, 0.0, 1.0)
        if name == "isru":
            return z / np.sqrt(1.0 + z * z)
        if name == "arctangent":
            return (2.0 / math.pi) * np.arctan(z)
        if name == "tanh":
            return np.tanh(z)
        if name == "arcsinh":
            return np.arcsinh(z)
        if name == "elliot":
            return z / (1.0 + np.abs(z))
        if name == "logarithmic":
            return np.sign(z) * np.log1p(np.abs(z))
        if name == "swish":
            return z * _sigmoid(z)
        if name == "mish":
            return z * np.tanh(_softplus(z))
        return z.copy()

    def to_spec(self):
        if self.name == "capped_relu" and self.beta != 1.0:
            return {"name": self.name, "beta": self.beta}
        return self.name


def eval_activation(a: Activation | str, xi):
    if isinstance(a, str):
        a = Activation(a)
    return a(xi)


class Map:
    """Base class; subclasses implement ``batch``."""

    in_dim: int
    out_dim: int

    def __call__(self, x) -> np.ndarray:
        x = as_vector(x, self.in_dim)
        return self.batch(x[None, :])[0]

    def batch(self, X) -> np.ndarray:
        raise NotImplementedError

    def _check_batch(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.in_dim:
            raise ValueError(f"dimension mismatch: expected (n, {self.in_dim}), got {X.shape}")
        return X

    def to_spec(self) -> dict:
        raise TypeError(f"{type(self).__name__} has no serialized form")


@dataclass(frozen=True)
class DenseLayer:
    weights: np.ndarray
    bias: np.ndarray
    activation: Activation

    def __post_init__(self):
        W = np.array(self.weights, dtype=float)
        b = np.array(self.bias, dtype=float).reshape(-1)
        if W.ndim != 2:
            raise ValueError("weights must be a matrix")
        if W.shape[0] != b.size:
            raise ValueError(f"shape mismatch: weights {W.shape} vs bias length {b.size}")
        if not (np.all(np.isfinite(W)) and np.all(np.isfinite(b))):
            raise ValueError("weights and bias must be finite")
        W.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "weights", W)
        object.__setattr__(self, "bias", b)
        if isinstance(self.activation, str):
            object.__setattr__(self, "activation", Activation(self.activation))

    def __call__(self, X):
        return self.activation(X @ self.weights.T + self.bias)


class Network(Map):
    """Composition of dense layers, first layer applied first."""

    def __init__(self, layers: Sequence[DenseLayer]):
        if not layers:
            raise ValueError("a network needs at least one layer")
        for prev, nxt in zip(layers, layers[1:]):
            if nxt.weights.shape[1] != prev.weights.shape[0]:
                raise ValueError("layer dimensions do not chain")
        self.layers = tuple(layers)
        self.in_dim = layers[0].weights.shape[1]
        self.out_dim = layers[-1].weights.shape[0]

    def batch(self, X):
        X = self._check_batch(X)
        for layer in self.layers:
            X = layer(X)
        return X

    def to_spec(self):
        return {"type": "dense_network", "layers": [
            {"weights": l.weights.tolist(), "bias": l.bias.tolist(),
             "activation": l.activation.to_spec()} for l in self.layers]}


def example3(x):
    """Logistic of ``10 x - 4``."""
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + np.exp(4.0 - 10.0 * np.asarray(x, dtype=float)))


def piecewise_contraction(p):
    """Quadratic on [0, 1/4], affine with slope 1/2 beyond; continuous at 1/4."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise ValueError("piecewise_contraction is defined for p >= 0 only")
    return np.where(p <= 0.25, p * p + 0.01, 0.5 * p - 1.0 / 16 + 0.01)


def zigzag_profile(t):
    """Triangle wave: rises on [2n, 2n+1), falls on [2n+1, 2n+2)."""
    t = np.asarray(t, dtype=float)
    r = t - 2.0 * np.floor(t / 2.0)
    return np.where(r < 1.0, r, 2.0 - r)


def zigzag(X):
    """Three-branch zigzag map on the closed positive quadrant, batched."""
    X = np.asarray(X, dtype=float)
    if np.any(X < 0):
        raise ValueError("zigzag is defined on the nonnegative quadrant only")
    x, y = X[..., 0], X[..., 1]
    s = np.maximum(np.abs(x), np.abs(y))
    d = zigzag_profile(s)[..., None]
    z = s / 4.0 - np.floor(s / 4.0)
    xy = X
    xx = np.stack([x, x], axis=-1)
    yx = np.stack([y, x], axis=-1)
    low = (1.0 - d) * xy + d * xx
    mid = d * xx + (1.0 - d) * yx
    high = d * xx + (1.0 - d) * xy
    zc = z[..., None]
    return np.where(zc < 0.25, low, np.where(zc < 0.75, mid, high))


ROTATION_W = np.array([[0.0, -1.0], [1.0, 0.0]])


def rotation_sigmoid(X):
    X = np.asarray(X, dtype=float)
    return _sigmoid(X @ ROTATION_W.T)


def sin_shift(x):
    x = np.asarray(x, dtype=float)
    return np.sin(x) + x - 1.0


_BUILTINS: dict[str, tuple[int, int, Callable]] = {
    "example3": (1, 1, example3),
    "piecewise_contraction": (1, 1, piecewise_contraction),
    "zigzag": (2, 2, zigzag),
    "rotation_sigmoid": (2, 2, rotation_sigmoid),
    "sin_shift": (1, 1, sin_shift),
}
BUILTIN_NAMES = tuple(_BUILTINS)


class Builtin(Map):
    """Closed-form example map looked up by name."""

    def __init__(self, name: str):
        if name not in _BUILTINS:
            raise ValueError(f"unknown builtin {name!r}; choose from {', '.join(_BUILTINS)}")
        self.name = name
        self.in_dim, self.out_dim, self._fn = _BUILTINS[name]

    def batch(self, X):
        X = self._check_batch(X)
        return np.asarray(self._fn(X), dtype=float).reshape(X.shape[0], self.out_dim)

    def to_spec(self):
        return {"type": "builtin", "name": self.name}

    def __repr__(self):
        return f"Builtin({self.name!r})"


class Symmetric(Map):
    """Even extension ``x -> inner(|x_1|, ..., |x_N|)``."""

    def __init__(self, inner: Map):
        self.inner = inner
        self.in_dim, self.out_dim = inner.in_dim, inner.out_dim

    def batch(self, X):
        return self.inner.batch(np.abs(self._check_batch(X)))

    def to_spec(self):
        return {"type": "symmetric", "inner": self.inner.to_spec()}


class FunctionMap(Map):
    """Wrap a Python callable.  ``vectorized`` callables receive ``(n, N)``
    batches; others are called point by point."""

    def __init__(self, fn: Callable, in_dim: int, out_dim: int | None = None,
                 name: str = "function", vectorized: bool = False):
        self.fn = fn
        self.in_dim = in_dim
        self.out_dim = in_dim if out_dim is None else out_dim
        self.name = name
        self.vectorized = vectorized

    def batch(self, X):
        X = self._check_batch(X)
        if self.vectorized:
            out = np.asarray(self.fn(X), dtype=float)
        else:
            out = np.array([np.asarray(self.fn(x), dtype=float).reshape(-1) for x in X])
        return out.reshape(X.shape[0], self.out_dim)

    def __repr__(self):
        return f"FunctionMap({self.name!r})"


def eval_map(m: Map, x) -> np.ndarray:
    return m(x)


def unimodal_sigmoid_layer() -> Network:
    """Two-neuron layer with a slightly negative off-diagonal weight."""
    W = [[0.95, -0.05], [-0.05, 0.95]]
    return Network([DenseLayer(W, [1.0, -0.05], Activation("unimodal_sigmoid"))])


def _parse_activation(spec) -> Activation:
    if isinstance(spec, str):
        return Activation(spec)
    if isinstance(spec, dict) and "name" in spec:
        return Activation(spec["name"], float(spec.get("beta", 1.0)),
                          bool(spec.get("strict_domain", False)))
    raise ValueError(f"bad activation spec {spec!r}")


def _parse_matrix(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("weights must be a nonempty list of rows")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise ValueError("shape mismatch: ragged weight rows")
    return np.array(rows, dtype=float)


def parse_map_spec(doc: dict) -> Map:
    """Build a map from its JSON-style description."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValueError("map spec must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "builtin":
        return Builtin(doc.get("name", ""))
    if kind == "symmetric":
        if "inner" not in doc:
            raise ValueError("symmetric spec needs 'inner'")
        return Symmetric(parse_map_spec(doc["inner"]))
    if kind == "dense_network":
        layers = doc.get("layers")
        if not isinstance(layers, list) or not layers:
            raise ValueError("dense_network needs a nonempty 'layers' list")
        built = []
        for i, ld in enumerate(layers):
            try:
                W = _parse_matrix(ld["weights"])
                b = np.asarray(ld["bias"], dtype=float)
                act = _parse_activation(ld["activation"])
            except KeyError as exc:
                raise ValueError(f"layer {i} is missing {exc}") from None
            built.append(DenseLayer(W, b, act))
        return Network(built)
    raise ValueError(f"unknown map type {kind!r}")
