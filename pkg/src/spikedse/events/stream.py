# stdlib
from pathlib import Path
import re
from typing import Optional, Union

# third party
import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

# spikedse absolute
from spikedse.exceptions import EventParseError
import spikedse.logger as log
from spikedse.utils.serialization import load_json, save_json

COLUMNS = ["t", "x", "y", "p"]


class EventStream(BaseModel):
    """Address events (t in microseconds, pixel x, pixel y, polarity) of one
    sensor recording, ordered by time."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    p: np.ndarray
    width: int = Field(ge=1)
    height: int = Field(ge=1)
    duration: int = Field(ge=0)
    label: Optional[int] = None

    @model_validator(mode="after")
    def _check_records(self) -> "EventStream":
        n = len(self.t)
        if not (len(self.x) == len(self.y) == len(self.p) == n):
            raise ValueError("event columns have different lengths")
        if n == 0:
            return self
        if np.any(self.t < 0):
            raise ValueError("negative timestamp")
        if np.any(np.diff(self.t) < 0):
            raise ValueError("timestamps must be non-decreasing")
        if np.any((self.x < 0) | (self.x >= self.width)):
            raise ValueError(f"x outside [0, {self.width})")
        if np.any((self.y < 0) | (self.y >= self.height)):
            raise ValueError(f"y outside [0, {self.height})")
        if not np.isin(self.p, (0, 1)).all():
            raise ValueError("polarity must be 0 or 1")
        return self

    @classmethod
    def from_arrays(
        cls,
        t: np.ndarray,
        x: np.ndarray,
        y: np.ndarray,
        p: np.ndarray,
        width: int,
        height: int,
        duration: int,
        label: Optional[int] = None,
    ) -> "EventStream":
        return cls(
            t=np.asarray(t, dtype=np.int64),
            x=np.asarray(x, dtype=np.int64),
            y=np.asarray(y, dtype=np.int64),
            p=np.asarray(p, dtype=np.int64),
            width=width,
            height=height,
            duration=duration,
            label=label,
        )

    @classmethod
    def empty(cls, width: int, height: int, duration: int = 0, label: Optional[int] = None) -> "EventStream":
        z = np.zeros(0, dtype=np.int64)
        return cls(t=z, x=z, y=z, p=z, width=width, height=height, duration=duration, label=label)

    def __len__(self) -> int:
        return len(self.t)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventStream):
            return NotImplemented
        return (
            (self.width, self.height, self.duration, self.label)
            == (other.width, other.height, other.duration, other.label)
            and all(
                np.array_equal(getattr(self, col), getattr(other, col))
                for col in COLUMNS
            )
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({col: getattr(self, col) for col in COLUMNS}, columns=COLUMNS)

    def manifest(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "duration": self.duration,
            "label": self.label,
        }


def sidecar_path(path: Union[str, Path]) -> Path:
    return Path(path).with_suffix(".json")


def _parse_frame(path: Path) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, skip_blank_lines=False, keep_default_na=False)
    except pd.errors.EmptyDataError:
        return pd.DataFrame(columns=COLUMNS)
    except pd.errors.ParserError as e:
        m = re.search(r"line (\d+)", str(e))
        raise EventParseError(f"malformed record: {e}", line=int(m.group(1)) if m else None) from e

    if [c.strip() for c in frame.columns] != COLUMNS:
        raise EventParseError(f"expected header {','.join(COLUMNS)}", line=1)
    frame.columns = COLUMNS
    return frame


def load_events(path: Union[str, Path]) -> EventStream:
    """Read a "t,x,y,p" CSV file and its JSON sidecar (width, height,
    duration, label)."""
    path = Path(path)
    if not path.is_file():
        raise EventParseError(f"event file {path} not found")
    frame = _parse_frame(path)

    values = {}
    for col in COLUMNS:
        raw = frame[col].str.strip()
        num = pd.to_numeric(raw, errors="coerce")
        bad = num.isna() | (num != np.floor(num)) | (num < 0)
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            # header occupies line 1
            raise EventParseError(
                f"invalid value '{frame[col].iloc[row]}' in column {col}", line=row + 2
            )
        values[col] = num.to_numpy(dtype=np.int64)

    backward = np.flatnonzero(np.diff(values["t"]) < 0) if len(frame) else []
    if len(backward):
        raise EventParseError("timestamps must be non-decreasing", line=int(backward[0]) + 3)

    sidecar = sidecar_path(path)
    if sidecar.exists():
        meta = load_json(sidecar)
    else:
        log.warning(f"no sidecar for {path}, inferring sensor dims from the records")
        meta = {
            "width": int(values["x"].max()) + 1 if len(frame) else 1,
            "height": int(values["y"].max()) + 1 if len(frame) else 1,
            "duration": int(values["t"].max()) + 1 if len(frame) else 0,
            "label": None,
        }

    try:
        width, height = int(meta["width"]), int(meta["height"])
    except (KeyError, TypeError, ValueError) as e:
        raise EventParseError(f"{sidecar}: invalid sensor dims ({e})") from e
    out_of_range = (values["x"] >= width) | (values["y"] >= height) | (values["p"] > 1)
    if out_of_range.any():
        row = int(np.flatnonzero(out_of_range)[0])
        raise EventParseError(
            f"record outside the {width}x{height} sensor or with polarity > 1", line=row + 2
        )

    try:
        return EventStream.from_arrays(
            **values,
            width=int(meta["width"]),
            height=int(meta["height"]),
            duration=int(meta["duration"]),
            label=meta.get("label"),
        )
    except (KeyError, ValueError) as e:
        raise EventParseError(f"{path}: {e}") from e


def save_events(stream: EventStream, path: Union[str, Path]) -> None:
    path = Path(path)
    stream.to_frame().to_csv(path, index=False, lineterminator="\n")
    save_json(sidecar_path(path), stream.manifest())
