"""
Bundled automaton files.
"""
from pathlib import Path
from typing import List

AUTOMATA_DIR = Path(__file__).resolve().parent / "automata"


def bundled_dfa_names() -> List[str]:
    """Stems of the bundled ``.dfa`` files, sorted."""
    return sorted(path.stem for path in AUTOMATA_DIR.glob("*.dfa"))


def resolve_dfa_path(name_or_path: str) -> Path:
    """An existing file path, else the bundled file of that name (with or without ``.dfa``)."""
    path = Path(name_or_path)
    if path.exists():
        return path
    bundled = AUTOMATA_DIR / (path.name if path.suffix == ".dfa" else f"{path.name}.dfa")
    return bundled if bundled.exists() else path
