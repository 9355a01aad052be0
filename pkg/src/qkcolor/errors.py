"""Exception hierarchy shared by all pipeline stages."""


class QKColorError(Exception):
    """Base class for all qkcolor errors."""


# --- input / graph errors ---

class MalformedMatrix(QKColorError):
    """Adjacency text is not a square 0/1 matrix."""


class AsymmetricMatrix(QKColorError):
    """Adjacency matrix does not describe an undirected graph."""


class SelfLoop(QKColorError):
    """Nonzero diagonal entry or edge (i, i)."""


class InvalidK(QKColorError):
    """Color count k < 2."""


# --- circuit IR errors ---

class IndexOutOfRange(QKColorError):
    """Gate operand outside the circuit register."""


class OverlappingOperands(QKColorError):
    """Controls and targets of a gate are not disjoint."""


class UnloweredGate(QKColorError):
    """Gate not expressible in the lowered alphabet (MCT arity >= 2 or
    negative control still present)."""


class WidthMismatch(QKColorError):
    """Comparator register widths differ."""


class NoInvalidColors(QKColorError):
    """Invalid-color fragment requested when k is a power of two."""


class NoSolutions(QKColorError):
    """Graph is not k-colorable; no Grover loop can be built."""


# --- routing errors ---

class Disconnected(QKColorError):
    """Coupling graph is not connected."""


class TooFewPhysicalQubits(QKColorError):
    """Coupling graph smaller than the circuit register."""


# --- resource limits ---

class TooManyQubits(QKColorError):
    """Register exceeds the simulator ceiling."""


class TooLarge(QKColorError):
    """Brute-force enumeration space exceeds the configured bound."""


class AncillaLeak(QKColorError):
    """Oracle failed to return an ancilla to its initial state."""
