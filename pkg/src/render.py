"""
Static braid diagrams in ASCII and SVG

A braid word is a list of signed generator letters. Letter +i means the
strand in position i crosses OVER the strand in position i+1 (the left/top
strand passes over); -i means it passes under. One crossing per row (ASCII)
or per column (SVG), no simplification.
"""
import logging
from typing import List, Sequence, Tuple

logger = logging.getLogger(__name__)

ASCII_CONVENTION = "# +i: strand at position i crosses OVER strand i+1; -i: under. Time runs downward."
SVG_CONVENTION = "+i: strand at position i crosses OVER strand i+1; -i: under. Time runs left to right."

STEP = 30
HALF = STEP // 2
GAP = 10


def _check_word(m: int, word: Sequence[int]):
    if m < 2:
        raise ValueError(f"A braid diagram needs at least 2 strands, got {m}")
    for letter in word:
        if letter == 0 or abs(letter) >= m:
            raise ValueError(f"Letter {letter} is not a generator of the braid group on {m} strands")


def crossing_count(word: Sequence[int]) -> int:
    return len(word)


def ascii_diagram(m: int, word: Sequence[int]) -> str:
    """
    Strands as columns of '|', three rows per crossing

    Positive crossings draw the over strand as '\\' in the middle row,
    negative ones as '/'.
    """
    _check_word(m, word)
    width = 4 * (m - 1) + 1

    def bars() -> List[str]:
        row = [" "] * width
        for p in range(m):
            row[4 * p] = "|"
        return row

    lines = [ASCII_CONVENTION, "".join(str(p + 1).ljust(4) for p in range(m)).rstrip()]
    lines.append("".join(bars()))
    for letter in word:
        left = 4 * (abs(letter) - 1)
        right = left + 4
        top, middle, bottom = bars(), bars(), bars()
        for row in (top, middle, bottom):
            row[left] = " "
            row[right] = " "
        top[left + 1], top[right - 1] = "\\", "/"
        middle[left + 2] = "\\" if letter > 0 else "/"
        bottom[left + 1], bottom[right - 1] = "/", "\\"
        lines.extend("".join(row).rstrip() for row in (top, middle, bottom))
        lines.append("".join(bars()))
    return "\n".join(lines) + "\n"


def _strand_paths(start: int, word: Sequence[int]) -> List[List[Tuple[int, int]]]:
    """Polyline pieces of one strand; the under strand is cut around each crossing"""
    position = start
    x = HALF
    y = HALF + STEP * position
    path = [(0, y), (x, y)]
    paths = []
    for letter in word:
        i = abs(letter) - 1
        if i == position:
            moving_down = True
        elif i + 1 == position:
            moving_down = False
        else:
            x += STEP
            path.append((x, y))
            continue

        # the strand starting at the upper position is over for positive letters
        over = (letter > 0) == moving_down
        dy = STEP if moving_down else -STEP
        if not over:
            sign = 1 if moving_down else -1
            path.append((x + GAP, y + sign * GAP))
            paths.append(path)
            path = [(x + STEP - GAP, y + dy - sign * GAP)]
        position += 1 if moving_down else -1
        x += STEP
        y += dy
        path.append((x, y))
    path.append((x + HALF, y))
    paths.append(path)
    return paths


def svg_diagram(m: int, word: Sequence[int]) -> str:
    """
    Deterministic SVG: strands as horizontal lines, one column per letter

    Strand 1 is the top line. The convention is repeated in an XML comment.
    """
    _check_word(m, word)
    width = STEP * (len(word) + 1)
    height = STEP * m

    def path_d(path: List[Tuple[int, int]]) -> str:
        return "M " + " L ".join(f"{x} {y}" for x, y in path)

    pieces = []
    for strand in range(m):
        for path in _strand_paths(strand, word):
            pieces.append(f'<path d="{path_d(path)}" stroke="black" fill="none" stroke-width="2"/>')

    logger.debug(f"SVG diagram: {m} strands, {len(word)} crossings, {len(pieces)} path pieces")
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">',
        f"<!-- {SVG_CONVENTION} -->",
        *pieces,
        "</svg>",
    ]) + "\n"
