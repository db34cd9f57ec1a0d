from pydantic import BaseModel, model_validator


class FormDocument(BaseModel):
    """A bilinear form on labelled basis vectors, with generators and optional blocks."""

    dim: int
    labels: list[str]
    gens: list[str]
    edges: list[tuple[str, str]] = []
    arcs: list[tuple[str, str]] = []
    blocks: list[list[str]] | None = None
    vectors: dict[str, list[str]] = {}
    title: str | None = None

    @model_validator(mode="after")
    def check_consistency(self) -> "FormDocument":
        known = set(self.labels)
        if len(known) != len(self.labels):
            raise ValueError("labels must be unique")
        if self.dim != len(self.labels):
            raise ValueError(f"dim {self.dim} does not match {len(self.labels)} labels")
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("gens must be unique")
        if unknown := [g for g in self.gens if g not in known]:
            raise ValueError(f"unknown generator labels {unknown}")

        # directed pairs (a, b) with Ω(a, b) = 1; each may be declared once
        declared: set[tuple[str, str]] = set()
        entries = [("edge", pair) for pair in self.edges] + [("arc", pair) for pair in self.arcs]
        for kind, (a, b) in entries:
            if a not in known or b not in known:
                raise ValueError(f"{kind} {a} {b} uses an unknown label")
            if a == b:
                raise ValueError(f"{kind} {a} {b} would pair a label with itself")
            keys = {(a, b), (b, a)} if kind == "edge" else {(a, b)}
            if keys & declared:
                raise ValueError(f"{kind} {a} {b} repeats or conflicts with an earlier entry")
            declared |= keys

        if self.blocks is not None:
            flat = [label for block in self.blocks for label in block]
            if sorted(flat) != sorted(self.gens) or not all(self.blocks):
                raise ValueError("blocks must partition gens")

        for name, terms in self.vectors.items():
            if name in known:
                raise ValueError(f"vector name {name} shadows a label")
            if unknown := [t for t in terms if t not in known]:
                raise ValueError(f"vector {name} uses unknown labels {unknown}")
        return self
