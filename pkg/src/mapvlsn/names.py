"""Seeded generator of distinct person-name records for linkage experiments.

Surnames are assembled from syllables so that a subset of a few hundred
names rarely shares a surname, much like a list of real researchers.
"""

from __future__ import annotations

import numpy as np

FIRST = (
    "Sigmund Graham Ronald JoAnn Shizuo Albert Barbara Charles Dorothy Edward "
    "Frances George Helen Isaac Julia Kenneth Laura Michael Nancy Oliver "
    "Patricia Quentin Rachel Stephen Teresa Ulrich Victoria Walter Xavier Yvonne "
    "Zachary Amelia Bruno Carmen Dmitri Elena Felix Gloria Hiroshi Ingrid "
    "Jorge Katarina Leonard Marta Nikolai Olga Pedro Rosa Simon Tamara "
    "Alan Beatrice Cedric Daphne Emil Fiona Gustav Harriet Igor Jasmine "
    "Karl Lucia Magnus Nadia Otto Penelope Raymond Sabine Tobias Ursula "
    "Vincent Wilma Yusuf Zelda Anton Bianca Cyril Delia Ernst Flora "
    "Gordon Hilda Ivan Judith Kurt Lorena Marcel Noemi Oscar Paulina "
    "Rudolf Sonia Theo Valeria Wendell Yoshiko Arthur Brigitte Conrad Edith"
).split()

_ONSETS = ("b", "br", "c", "ch", "d", "f", "g", "gr", "h", "k", "kl", "l", "m", "n", "p", "r", "s", "sch", "st", "t", "v", "w", "z")
_VOWELS = ("a", "e", "i", "o", "u", "ai", "ei", "ou")
_CODAS = ("", "", "", "n", "r", "s", "l", "m", "tz", "ck", "nd", "x")


def _surname(rng: np.random.Generator) -> str:
    syllables = 2 + int(rng.random() < 0.2)
    parts = []
    for _ in range(syllables):
        parts.append(_ONSETS[rng.integers(len(_ONSETS))])
        parts.append(_VOWELS[rng.integers(len(_VOWELS))])
        parts.append(_CODAS[rng.integers(len(_CODAS))])
    return "".join(parts).capitalize()


def researcher_names(count: int, seed: int = 0) -> list[str]:
    """``count`` distinct names of the form 'First [X ]Last'."""
    rng = np.random.default_rng(seed)
    initials = "ABCDEFGHJKLMNPRSTW"
    names: list[str] = []
    seen: set[str] = set()
    attempts = 0
    while len(names) < count:
        attempts += 1
        if attempts > 100 * count + 1000:
            raise ValueError(f"could not generate {count} distinct names")
        first = FIRST[rng.integers(len(FIRST))]
        mid = initials[rng.integers(len(initials))] + " " if rng.random() < 0.3 else ""
        name = f"{first} {mid}{_surname(rng)}"
        if name not in seen:
            seen.add(name)
            names.append(name)
    return names
