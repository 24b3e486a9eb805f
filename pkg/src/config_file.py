"""
Reader for tower/curve description files.

Grammar (one `key = value` per line, `#` and `;` start comments):

    [group]   p, ell, n, kummer_exponent
    [base]    genus, genus_ErT
    [branch]  id, tame_phi, jumps, epsilon, delta        (repeatable)
    [curve]   q, b_roots = root:phi, ...  f_terms = root:order:coeff, ...  place

A [branch] with jumps but no epsilon/delta is totally wildly ramified with the
Hilbert different of its jumps.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from .config import DEFAULT_R_ACT
from .errors import ConfigParseError
from .models import BranchPoint, CurveSpec, GroupSpec, KummerRoot, PoleTerm, TowerData, WildData
from .ramdata import ensure_valid, hilbert_different

logger = logging.getLogger(__name__)

SECTION_KEYS: Dict[str, Tuple[str, ...]] = {
    "group": ("p", "ell", "n", "kummer_exponent"),
    "base": ("genus", "genus_ErT"),
    "branch": ("id", "tame_phi", "jumps", "epsilon", "delta"),
    "curve": ("q", "b_roots", "f_terms", "place"),
}
REPEATABLE = {"branch"}

Entry = Tuple[str, int]


class ConfigSection(BaseModel):
    name: str
    line: int
    entries: Dict[str, Entry] = Field(default_factory=dict, description="key -> (raw value, line)")

    def get(self, key: str) -> Optional[Entry]:
        return self.entries.get(key)


class ConfigFile(BaseModel):
    """Parsed sections; conversion to domain objects happens in tower()/curve()."""

    source: str = "<string>"
    group: ConfigSection
    base: Optional[ConfigSection] = None
    branches: List[ConfigSection] = Field(default_factory=list)
    curve_section: Optional[ConfigSection] = None

    def group_spec(self) -> GroupSpec:
        s = self.group
        p = _int(s, "p", required=True)
        ell = _int(s, "ell", default=0)
        n = _int(s, "n", default=1)
        kummer = _int(s, "kummer_exponent", default=DEFAULT_R_ACT)
        try:
            return GroupSpec(p=p, ell=ell, n=n, kummer_exponent=kummer)
        except ValidationError as e:
            raise ConfigParseError(_first_error(e), s.line) from e

    def has_tower(self) -> bool:
        """True when the file declares branch points of its own rather than leaving the tower to the curve."""
        return bool(self.branches)

    def tower(self) -> TowerData:
        """Validated TowerData; raises TowerValidationError on mathematical violations."""
        group = self.group_spec()
        genus = _int(self.base, "genus", default=0) if self.base else 0
        genus_ErT = _int(self.base, "genus_ErT") if self.base else None
        points = [_branch(section, index, group) for index, section in enumerate(self.branches)]
        try:
            tower = TowerData(group=group, base_genus=genus, branch_points=points, genus_ErT=genus_ErT)
        except ValidationError as e:
            raise ConfigParseError(_first_error(e), self.base.line if self.base else None) from e
        return ensure_valid(tower)

    def curve(self) -> Optional[CurveSpec]:
        s = self.curve_section
        if s is None:
            return None
        group = self.group_spec()
        place = s.get("place")
        try:
            return CurveSpec(
                group=group,
                q=_int(s, "q"),
                b_roots=[KummerRoot(root=r, phi=phi) for r, phi in _tuples(s, "b_roots", 2)],
                f_terms=[PoleTerm(root=r, order=m, coeff=c) for r, m, c in _tuples(s, "f_terms", 3, default_last=1)],
                place=place[0] if place else None,
            )
        except ValidationError as e:
            raise ConfigParseError(_first_error(e), s.line) from e


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    where = ".".join(str(part) for part in err.get("loc", ()))
    return f"{where}: {err['msg']}" if where else err["msg"]


def _int(section: Optional[ConfigSection], key: str, default: Optional[int] = None, required: bool = False) -> Optional[int]:
    entry = section.get(key) if section else None
    if entry is None:
        if required:
            raise ConfigParseError(f"[{section.name}] is missing required key '{key}'", section.line)
        return default
    raw, line = entry
    try:
        return int(raw)
    except ValueError:
        raise ConfigParseError(f"{key} = {raw!r} is not an integer", line)


def _ints(section: ConfigSection, key: str) -> Optional[List[int]]:
    entry = section.get(key)
    if entry is None:
        return None
    raw, line = entry
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise ConfigParseError(f"{key} = {raw!r} is not a comma-separated integer list", line)


def _tuples(section: ConfigSection, key: str, width: int, default_last: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Parse `a:b, c:d` lists; the last component may be omitted when it has a default."""
    entry = section.get(key)
    if entry is None:
        return []
    raw, line = entry
    result = []
    for item in (part.strip() for part in raw.split(",")):
        if not item:
            continue
        fields = item.split(":")
        if len(fields) == width - 1 and default_last is not None:
            fields.append(str(default_last))
        if len(fields) != width:
            raise ConfigParseError(f"{key}: '{item}' needs {width} colon-separated integers", line)
        try:
            result.append(tuple(int(f) for f in fields))
        except ValueError:
            raise ConfigParseError(f"{key}: '{item}' needs {width} colon-separated integers", line)
    return result


def _branch(section: ConfigSection, index: int, group: GroupSpec) -> BranchPoint:
    entry = section.get("id")
    point_id = entry[0] if entry else str(index)
    jumps = _ints(section, "jumps")
    epsilon = _int(section, "epsilon")
    delta = _int(section, "delta")
    wild = None
    if jumps is not None:
        try:
            wild = WildData(
                jumps=tuple(jumps),
                epsilon=epsilon if epsilon is not None else len(jumps),
                delta=delta if delta is not None else hilbert_different(group.p, jumps),
            )
        except ValidationError as e:
            raise ConfigParseError(_first_error(e), section.get("jumps")[1]) from e
    elif epsilon is not None or delta is not None:
        raise ConfigParseError(f"[branch] {point_id}: epsilon/delta given without jumps", section.line)
    try:
        return BranchPoint(id=point_id, tame_phi=_int(section, "tame_phi", default=0), wild=wild)
    except ValidationError as e:
        raise ConfigParseError(_first_error(e), section.line) from e


def parse_config(text: str, source: str = "<string>") -> ConfigFile:
    """
    Parse description-file text.

    Raises:
        ConfigParseError: with the offending line number
    """
    sections: List[ConfigSection] = []
    current: Optional[ConfigSection] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split(";", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigParseError(f"unterminated section header {line!r}", number)
            name = line[1:-1].strip().lower()
            if name not in SECTION_KEYS:
                raise ConfigParseError(f"unknown section [{name}]", number)
            if name not in REPEATABLE and any(s.name == name for s in sections):
                raise ConfigParseError(f"section [{name}] appears twice", number)
            current = ConfigSection(name=name, line=number)
            sections.append(current)
            continue
        if "=" not in line:
            raise ConfigParseError(f"expected 'key = value', got {line!r}", number)
        if current is None:
            raise ConfigParseError("key outside of any section", number)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SECTION_KEYS[current.name]:
            raise ConfigParseError(f"unknown key '{key}' in [{current.name}]", number)
        if key in current.entries:
            raise ConfigParseError(f"duplicate key '{key}' in [{current.name}]", number)
        current.entries[key] = (value, number)

    by_name = {s.name: s for s in sections if s.name not in REPEATABLE}
    if "group" not in by_name:
        raise ConfigParseError("missing [group] section")
    config = ConfigFile(
        source=source,
        group=by_name["group"],
        base=by_name.get("base"),
        branches=[s for s in sections if s.name == "branch"],
        curve_section=by_name.get("curve"),
    )
    logger.debug(f"parsed {source}: {len(config.branches)} branch sections, curve={'yes' if config.curve_section else 'no'}")
    return config


def load_config(path: Union[str, Path]) -> ConfigFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigParseError(f"cannot read {path}: {e}")
    return parse_config(text, source=str(path))
