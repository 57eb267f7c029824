"""Exception and warning classes shared by every nervekit module."""


class NervekitError(ValueError):
    """Base class for input and verification errors."""


# catcore
class CategoryError(NervekitError):
    pass


class MissingIdentity(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class IncompleteCompositionTable(CategoryError):
    pass


class DanglingEndpoint(CategoryError):
    pass


class AnchorNotFound(CategoryError):
    pass


class FunctorError(NervekitError):
    pass


class NotPreservingComposition(FunctorError):
    pass


class NotPreservingIdentity(FunctorError):
    pass


class EndpointMismatch(FunctorError):
    pass


class NotNatural(NervekitError):
    pass


class ExplosionGuard(NervekitError):
    pass


class NotFound(NervekitError):
    pass


class AmbiguousUniversal(NervekitError):
    pass


# doublecat
class DoubleCategoryError(NervekitError):
    pass


class SharedObjectMismatch(DoubleCategoryError):
    pass


class MissingIdentitySquare(DoubleCategoryError):
    pass


class NotPastingClosed(DoubleCategoryError):
    pass


class CornerMismatch(DoubleCategoryError):
    pass


class WitnessShapeError(DoubleCategoryError):
    pass


class WitnessNotFunctorial(DoubleCategoryError):
    pass


# simpl
class SimplicialError(NervekitError):
    pass


class CapMismatch(SimplicialError):
    pass


class CapTooSmall(SimplicialError):
    pass


class NotSimplicial(SimplicialError):
    pass


class NotFunctorial(SimplicialError):
    pass


# homology
class NotChainMap(NervekitError):
    pass


# moduli
class ModelDataError(NervekitError):
    pass


class TwoOutOfThreeViolation(ModelDataError):
    pass


class NotClosedUnderComposition(ModelDataError):
    pass


class FactorizationMissing(ModelDataError):
    pass


class LiftMissing(ModelDataError):
    pass


class NoTerminalObject(ModelDataError):
    pass


class UnknownVariant(ModelDataError):
    pass


class ObjectNotFound(ModelDataError):
    pass


class NotBicommutative(ModelDataError):
    pass


class MissingLimit(ModelDataError):
    pass


class NotFibrant(ModelDataError):
    pass


class ChoiceNotFunctorial(ModelDataError):
    pass


class MarkingViolation(ModelDataError):
    """A construction step produced a map outside the class it must lie in."""


class TruncationWarning(UserWarning):
    """Nondegenerate simplices exist above the dimension cap."""


class NotRegular(UserWarning):
    """A nondegenerate simplex has a degenerate face."""
