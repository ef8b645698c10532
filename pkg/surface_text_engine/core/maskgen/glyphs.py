# Binary glyph stamps used to draw characters into aligned quads
# core/maskgen/glyphs.py

import logging
import threading
from pathlib import Path
from typing import Dict, FrozenSet, Optional, Tuple, Union

import numpy as np
import yaml
from PIL import Image

from surface_text_engine.core.errors import InvalidImage, IoError, SurfaceTextError, UnsupportedCharacter

logger = logging.getLogger(__name__)

DEFAULT_GLYPHS_PATH = Path(__file__).parent.parent.parent / "config" / "glyphs.yaml"
DEFAULT_STAMP_SIZE = 70
STAMP_THRESHOLD = 128

INK = "#"


def _expand_pattern(pattern: np.ndarray, size: int) -> np.ndarray:
    """Nearest-sample a small boolean pattern up to a size x size stamp."""
    rows, cols = pattern.shape
    row_idx = ((np.arange(size) + 0.5) * rows / size).astype(np.int64)
    col_idx = ((np.arange(size) + 0.5) * cols / size).astype(np.int64)
    return pattern[np.ix_(row_idx, col_idx)]


class GlyphSet:
    """
    Binary stamps per character in a canonical unit square.

    The built-in set (A-Z, 0-9, . , - ' & ! ?) comes from glyphs.yaml. A
    stamp directory may override single characters with PNG files named
    by their 4-digit hex codepoint (0041.png for "A").
    """

    def __init__(
        self,
        config_path: Optional[Union[str, Path]] = None,
        stamp_dir: Optional[Union[str, Path]] = None,
        stamp_size: int = DEFAULT_STAMP_SIZE,
    ):
        if config_path is None:
            config_path = DEFAULT_GLYPHS_PATH

        try:
            with open(config_path, "r", encoding="utf-8") as f:
                self.config = yaml.safe_load(f) or {}
        except OSError as e:
            raise IoError(f"cannot read glyph set {config_path}: {e}", path=str(config_path)) from e

        self.stamp_size = stamp_size
        self.pattern_rows = int(self.config.get("pattern_rows", 7))
        self.pattern_cols = int(self.config.get("pattern_cols", 5))
        self._stamps: Dict[str, np.ndarray] = {}

        for ch, rows in (self.config.get("glyphs") or {}).items():
            self._stamps[str(ch)] = self._stamp_from_rows(str(ch), rows)

        if stamp_dir is not None:
            self._load_overrides(Path(stamp_dir))

        for stamp in self._stamps.values():
            stamp.setflags(write=False)

    def _stamp_from_rows(self, ch: str, rows) -> np.ndarray:
        if len(rows) != self.pattern_rows or any(len(r) != self.pattern_cols for r in rows):
            raise SurfaceTextError(
                f"glyph {ch!r} must be {self.pattern_rows} rows of {self.pattern_cols} columns"
            )
        pattern = np.array([[c == INK for c in row] for row in rows], dtype=bool)
        return _expand_pattern(pattern, self.stamp_size)

    def _load_overrides(self, stamp_dir: Path) -> None:
        if not stamp_dir.is_dir():
            raise IoError(f"stamp directory {stamp_dir} does not exist", path=str(stamp_dir))

        for path in sorted(stamp_dir.glob("*.png")):
            try:
                ch = chr(int(path.stem, 16))
            except ValueError:
                logger.warning("Ignoring stamp %s: name is not a hex codepoint", path.name)
                continue
            try:
                with Image.open(path) as img:
                    gray = img.convert("L").resize(
                        (self.stamp_size, self.stamp_size), resample=Image.Resampling.NEAREST
                    )
                    stamp = np.asarray(gray) >= STAMP_THRESHOLD
            except OSError as e:
                raise InvalidImage(f"cannot read stamp {path}: {e}", path=str(path)) from e
            self._stamps[ch] = stamp.copy()
            logger.debug("Stamp override for %r from %s", ch, path.name)

    @property
    def characters(self) -> FrozenSet[str]:
        return frozenset(self._stamps)

    def supports(self, ch: str) -> bool:
        return ch in self._stamps

    def stamp(self, ch: str) -> np.ndarray:
        try:
            return self._stamps[ch]
        except KeyError:
            raise UnsupportedCharacter(f"no glyph for character {ch!r}", character=ch) from None

    def ink_fraction(self, ch: str) -> float:
        return float(self.stamp(ch).mean())


_default_sets: Dict[Tuple[Optional[str], int], GlyphSet] = {}
_lock = threading.Lock()


def load_glyph_set(
    stamp_dir: Optional[Union[str, Path]] = None,
    stamp_size: int = DEFAULT_STAMP_SIZE,
) -> GlyphSet:
    """Cached glyph set for (stamp_dir, stamp_size)."""
    key = (str(Path(stamp_dir).resolve()) if stamp_dir else None, stamp_size)
    if key not in _default_sets:
        with _lock:
            if key not in _default_sets:
                _default_sets[key] = GlyphSet(stamp_dir=stamp_dir, stamp_size=stamp_size)
    return _default_sets[key]
