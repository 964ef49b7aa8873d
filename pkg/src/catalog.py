# src/catalog.py

# Anyon counts covered by the reports and the CSV export

SMALL_SYSTEMS = [
    4,   # one qubit
    6,   # two qubits, group still enumerable
]

# Relation checks only; the images get too large to enumerate
SURVEY_SYSTEMS = [8, 10, 12]

# Known gate compilations: (name, anyon count, braid word, gate)
GATE_WORDS = [
    ("hadamard", 4, "1 2 1", "H"),
    ("cnot", 6, "-3 4 3 1 5 4 -3", "CNOT"),
    ("not by monodromy", 4, "2 2", "X"),
]

# Gates that must stay outside the one-qubit image
MISSING_GATES = [
    ("pi/8", 4, "T"),
]
