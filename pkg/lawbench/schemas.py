"""Pydantic schemas for spec documents, bounds and machine-readable reports."""

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

SCHEMA_VERSION = 1

ScalarIn = Union[int, str]


class Bounds(BaseModel):
    """Quantifier budget shared by every enumeration and law check.

    The ``maxNested*`` fields bound quantifiers over carriers that stack two
    different monads, such as ``H(K A)`` in a distributive law or ``K(H A)``
    in a composite monad. ``nested()`` returns the budget those checks run with.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    maxListLen: int = Field(2, ge=0, description="Longest list enumerated")
    maxTreeDepth: int = Field(2, ge=0, description="Deepest operation nesting of enumerated terms")
    maxFnEnum: int = Field(64, ge=1, description="Cap on exhaustive function-table enumeration")
    sampleSeed: int = Field(0, ge=0, description="Seed of the deterministic sampler")
    maxNestDepth: int = Field(2, ge=1, description="Layers of one monad in a nested carrier")
    maxCases: int = Field(250_000, ge=1, description="Quantifier tuples visited per law")
    maxSetSize: Optional[int] = Field(None, ge=0, description="Largest set enumerated, if capped")
    maxNestedTreeDepth: int = Field(1, ge=0, description="maxTreeDepth under stacked monads")
    maxNestedSetSize: int = Field(2, ge=0, description="maxSetSize under stacked monads")
    maxNestedCases: int = Field(4096, ge=1, description="maxCases under stacked monads")

    def nested(self) -> "Bounds":
        set_size = self.maxNestedSetSize
        if self.maxSetSize is not None:
            set_size = min(set_size, self.maxSetSize)
        return self.model_copy(
            update={
                "maxTreeDepth": min(self.maxTreeDepth, self.maxNestedTreeDepth),
                "maxSetSize": set_size,
                "maxCases": min(self.maxCases, self.maxNestedCases),
            }
        )


class UniverseIn(BaseModel):
    """Finite universe declaration: ``{"name": "Bit", "values": [0, 1]}``."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1, max_length=64)
    values: List[ScalarIn] = Field(default_factory=list)
    allowEmpty: bool = False

    @model_validator(mode="after")
    def check_values(self) -> "UniverseIn":
        if len(set(map(repr, self.values))) != len(self.values):
            raise ValueError("universe values must be distinct")
        if not self.values and not self.allowEmpty:
            raise ValueError("universe is empty; set allowEmpty to declare an empty universe")
        return self


class MonoidOpIn(BaseModel):
    """Binary operation of a monoid, either a named family or an explicit table."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["addMod", "leftZero", "max", "table"]
    rows: Optional[List[List[ScalarIn]]] = Field(
        default=None, description="Row x, column y holds x*y, in carrier order"
    )

    @model_validator(mode="after")
    def check_rows(self) -> "MonoidOpIn":
        if (self.kind == "table") != (self.rows is not None):
            raise ValueError("rows are required for kind 'table' and only for it")
        return self


class MonoidIn(BaseModel):
    """Monoid declaration; laws are verified when the document is loaded."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1, max_length=64)
    carrier: str = Field(..., description="Universe name")
    op: MonoidOpIn
    identity: ScalarIn
    commutative: bool = False


class MonadIn(BaseModel):
    """Catalog monad instance with its parameters."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1, max_length=64)
    kind: Literal[
        "identity",
        "list",
        "list+",
        "maybe",
        "exceptions",
        "reader",
        "writer",
        "state",
        "powerset",
        "tree",
        "tree+",
        "free",
    ]
    exceptions: Optional[str] = Field(None, description="Universe of exceptions")
    default: Optional[ScalarIn] = Field(None, description="Default exception")
    environment: Optional[str] = Field(None, description="Reader universe")
    states: Optional[str] = Field(None, description="State universe")
    monoid: Optional[str] = None
    signature: Optional[str] = None


class StrengthIn(BaseModel):
    """Named strength: a builtin constructor bound to a declared monad."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1, max_length=64)
    builtin: str
    monad: str
    order: int = Field(2, ge=0)
    default: Optional[ScalarIn] = None


class SignatureIn(BaseModel):
    """Finitary signature: ``{"name": "V", "ops": {"N": 2, "E": 0}}``."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1, max_length=64)
    ops: Dict[str, int]


class QuantifiersIn(BaseModel):
    """Universes playing the roles A, B and C in law statements."""

    model_config = ConfigDict(extra="forbid")

    A: str = "Bit"
    B: str = "Bit"
    C: str = "Bit"


class BoundsIn(BaseModel):
    """Partial bounds override carried by a spec document."""

    model_config = ConfigDict(extra="forbid")

    maxListLen: Optional[int] = Field(None, ge=0)
    maxTreeDepth: Optional[int] = Field(None, ge=0)
    maxFnEnum: Optional[int] = Field(None, ge=1)
    sampleSeed: Optional[int] = Field(None, ge=0)
    maxNestDepth: Optional[int] = Field(None, ge=1)
    maxCases: Optional[int] = Field(None, ge=1)
    maxSetSize: Optional[int] = Field(None, ge=0)
    maxNestedTreeDepth: Optional[int] = Field(None, ge=0)
    maxNestedSetSize: Optional[int] = Field(None, ge=0)
    maxNestedCases: Optional[int] = Field(None, ge=1)


class SpecDocumentIn(BaseModel):
    """Top level of a spec document."""

    model_config = ConfigDict(extra="forbid")

    universes: List[UniverseIn] = Field(default_factory=list)
    monoids: List[MonoidIn] = Field(default_factory=list)
    monads: List[MonadIn] = Field(default_factory=list)
    strengths: List[StrengthIn] = Field(default_factory=list)
    signatures: List[SignatureIn] = Field(default_factory=list)
    quantifiers: QuantifiersIn = Field(default_factory=QuantifiersIn)
    bounds: BoundsIn = Field(default_factory=BoundsIn)


class NamedValueOut(BaseModel):
    name: str
    value: str


class WitnessOut(BaseModel):
    """Counterexample with values in surface syntax."""

    inputs: List[NamedValueOut]
    lhs: str
    rhs: str
    lhsPath: str
    rhsPath: str
    divergence: Optional[int] = None


class LawRecordOut(BaseModel):
    """One law verdict in the machine report."""

    model_config = ConfigDict(extra="forbid")

    schemaVersion: Literal[1] = SCHEMA_VERSION
    type: Literal["law"] = "law"
    lawId: str
    subject: str
    status: Literal["PASS", "FAIL", "VACUOUS"]
    expected: Optional[Literal["PASS", "FAIL", "VACUOUS"]] = None
    casesChecked: int = Field(..., ge=0)
    mode: Literal["exhaustive", "sampled"]
    witness: Optional[WitnessOut] = None
    bounds: Bounds
    seed: int
    elapsedMs: float = 0.0


class ValueRecordOut(BaseModel):
    """A value printed by a reproduction."""

    model_config = ConfigDict(extra="forbid")

    schemaVersion: Literal[1] = SCHEMA_VERSION
    type: Literal["value"] = "value"
    example: str
    label: str
    value: str


class ReproRecordOut(BaseModel):
    """Outcome of one reproduction."""

    model_config = ConfigDict(extra="forbid")

    schemaVersion: Literal[1] = SCHEMA_VERSION
    type: Literal["repro"] = "repro"
    example: str
    claim: str
    matched: bool
    notes: List[str] = Field(default_factory=list)


class CatalogRecordOut(BaseModel):
    """One catalog entry: a monad kind, declared instance, strength or signature."""

    model_config = ConfigDict(extra="forbid")

    schemaVersion: Literal[1] = SCHEMA_VERSION
    type: Literal["catalog"] = "catalog"
    section: str
    name: str
    description: str


class EvalStepIn(BaseModel):
    """One composite-monad evaluation: ``unit``, ``join`` or ``bind`` with a table ``f``."""

    model_config = ConfigDict(extra="forbid")

    op: Literal["unit", "join", "bind"]
    value: str
    f: Optional[str] = None
    label: Optional[str] = None

    @model_validator(mode="after")
    def check_f(self) -> "EvalStepIn":
        if (self.op == "bind") != (self.f is not None):
            raise ValueError("f is required for bind and only for it")
        return self


class TermFileIn(BaseModel):
    """Input of ``compose --eval``."""

    model_config = ConfigDict(extra="forbid")

    steps: List[EvalStepIn] = Field(..., min_length=1)
