"""
Matriz de incidencia y utilidades de álgebra lineal exacta (racionales).
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple

import numpy as np

from nets.exceptions import DimensionError
from nets.net import Net, check_marking, check_tvector


def pre_matrix(net: Net) -> np.ndarray:
    matrix = np.zeros((len(net.places), len(net.transitions)), dtype=object)
    for (source, target), weight in net.arcs.items():
        if net.is_place(source):
            matrix[net.place_index(source), net.transition_index(target)] = weight
    return matrix


def post_matrix(net: Net) -> np.ndarray:
    matrix = np.zeros((len(net.places), len(net.transitions)), dtype=object)
    for (source, target), weight in net.arcs.items():
        if net.is_transition(source):
            matrix[net.place_index(target), net.transition_index(source)] = weight
    return matrix


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """I(p,t) = W(t,p) - W(p,t); filas = lugares, columnas = transiciones"""
    net: Net
    matrix: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def entry(self, place: str, transition: str) -> int:
        return int(self.matrix[self.net.place_index(place), self.net.transition_index(transition)])

    def column(self, transition: str) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.matrix[:, self.net.transition_index(transition)])

    def row(self, place: str) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.matrix[self.net.place_index(place), :])

    def effect(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """I·Y"""
        vector = check_tvector(self.net, vector, signed=True)
        return tuple(int(v) for v in self.matrix.dot(np.array(vector, dtype=object)))

    def apply(self, marking: Sequence[int], vector: Sequence[int]) -> Tuple[int, ...]:
        """M + I·Y (puede tener componentes negativas)"""
        marking = check_marking(self.net, marking, signed=True)
        return tuple(m + d for m, d in zip(marking, self.effect(vector)))

    def weigh(self, weights: Sequence[int]) -> Tuple[int, ...]:
        """Xᵀ·I"""
        if len(weights) != len(self.net.places):
            raise DimensionError(len(self.net.places), len(weights), 'vector P')
        return tuple(
            int(v) for v in np.array(tuple(weights), dtype=object).dot(self.matrix)
        )

    def as_rows(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.matrix]


def incidence(net: Net) -> IncidenceMatrix:
    return IncidenceMatrix(net, post_matrix(net) - pre_matrix(net))


def _as_fraction_array(rows) -> np.ndarray:
    array = np.array(rows, dtype=object)
    if array.ndim == 1:
        array = array.reshape(1, -1) if array.size else np.zeros((0, 0), dtype=object)
    return np.vectorize(Fraction, otypes=[object])(array) if array.size else array


def rref(rows) -> Tuple[np.ndarray, List[int]]:
    """Forma escalonada reducida exacta y columnas pivote"""
    matrix = _as_fraction_array(rows)
    if not matrix.size:
        return matrix, []
    height, width = matrix.shape
    pivots: List[int] = []
    row = 0
    for col in range(width):
        if row >= height:
            break
        candidates = [r for r in range(row, height) if matrix[r, col] != 0]
        if not candidates:
            continue
        pivot_row = candidates[0]
        if pivot_row != row:
            matrix[[row, pivot_row]] = matrix[[pivot_row, row]]
        matrix[row] = matrix[row] / matrix[row, col]
        for r in range(height):
            if r != row and matrix[r, col] != 0:
                matrix[r] = matrix[r] - matrix[r, col] * matrix[row]
        pivots.append(col)
        row += 1
    return matrix, pivots


def nullspace(rows, width: int) -> List[Tuple[Fraction, ...]]:
    """Base exacta del núcleo {x | A·x = 0} para una matriz de `width` columnas"""
    if width == 0:
        return []
    if len(rows) == 0:
        return [tuple(Fraction(int(i == j)) for j in range(width)) for i in range(width)]
    reduced, pivots = rref(rows)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        vector = [Fraction(0)] * width
        vector[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r, f]
        basis.append(tuple(vector))
    return basis


def integer_direction(vector: Sequence[Fraction]) -> Tuple[int, ...]:
    """Múltiplo entero primitivo (gcd 1) de un vector racional, con el mismo sentido"""
    denominators = [Fraction(v).denominator for v in vector]
    scale = lcm(*denominators) if denominators else 1
    values = [int(Fraction(v) * scale) for v in vector]
    divisor = gcd(*values) if values else 1
    if divisor == 0:
        return tuple(values)
    return tuple(v // divisor for v in values)


def is_prime(vector: Sequence[int]) -> bool:
    return gcd(*vector) == 1 if vector else False


def support(vector: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i for i, v in enumerate(vector) if v != 0)
