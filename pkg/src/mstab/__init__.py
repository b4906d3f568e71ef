"""Phase-sensitive simulation of Majorana stabilizer states."""
from .circuit import Circuit, parse_circuit, random_circuit, serialize_circuit
from .exact import Exact
from .majorana import MajoranaString, parse_operator
from .state import StabilizerState, basis_state, inner_product
from .tableau import ControlTableau

__all__ = ["Circuit", "ControlTableau", "Exact", "MajoranaString", "StabilizerState",
           "basis_state", "inner_product", "parse_circuit", "parse_operator",
           "random_circuit", "serialize_circuit"]
