from typing import Any

from pydantic import BaseModel, Field


class Check(BaseModel):
    name: str
    passed: bool = Field(alias="pass")
    detail: str = ""

    model_config = {"populate_by_name": True}


class Report(BaseModel):
    command: str
    input: str | None = None
    result: dict[str, Any] = {}
    checks: list[Check] = []

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def to_text(self) -> str:
        """Aligned ``key  value`` lines over the same tree ``to_json`` emits."""
        rows = list(_flatten("", self.model_dump(by_alias=True, mode="json")))
        width = max((len(key) for key, _ in rows), default=0)
        return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows)


def _flatten(prefix: str, value: Any):
    if isinstance(value, dict):
        if not value:
            yield prefix, "{}"
        for key, item in value.items():
            yield from _flatten(f"{prefix}.{key}" if prefix else str(key), item)
    elif isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            yield prefix, ", ".join(_scalar(item) for item in value) if value else "[]"
        else:
            for i, item in enumerate(value):
                yield from _flatten(f"{prefix}[{i}]", item)
    else:
        yield prefix, _scalar(value)


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)
