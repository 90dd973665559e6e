from enum import Enum

from pydantic import BaseModel, ConfigDict


#solver variants
class SolverVariant(str, Enum):
    GEOPG = "geopg"
    GEOPG_B = "geopg-b"
    LGEOPG = "lgeopg"
    LGEOPG_B = "lgeopg-b"
    APG_B = "apg-b"
    FISTA_B = "fista-b"

    @property
    def is_geometric(self) -> bool:
        return self in (SolverVariant.GEOPG, SolverVariant.GEOPG_B, SolverVariant.LGEOPG, SolverVariant.LGEOPG_B)

    @property
    def backtracking(self) -> bool:
        return self not in (SolverVariant.GEOPG, SolverVariant.LGEOPG)

    @property
    def limited_memory(self) -> bool:
        return self in (SolverVariant.LGEOPG, SolverVariant.LGEOPG_B)


#stopping rules
class TerminationCriterion(str, Enum):
    RELGAP = "relgap"
    GRADMAP = "gradmap"


class RootFinderName(str, Enum):
    BRENT = "brent"
    SSN = "ssn"


class ProblemKind(str, Enum):
    LS = "ls"
    LOGISTIC = "logistic"


#base model
class BaseSchema(BaseModel):
    model_config = ConfigDict(from_attributes=True, extra="forbid")
