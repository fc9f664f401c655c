"""
``Field`` and ``add_extra_schema`` for the document modules.

Documents are plain TypedDicts at runtime. When pydantic 2 is importable,
``Field`` is pydantic's, so the descriptions end up in the generated schemas;
otherwise it is a stand-in that only keeps the ``Annotated`` metadata legal.
"""

from typing import TYPE_CHECKING, Any, Callable, Dict, Type, TypeVar

T = TypeVar("T")

# Hand-written fragments merged into a document's schema after generation.
extra_schema: Dict[type, Dict[str, Any]] = {}


def add_extra_schema(schema: Dict[str, Any]) -> Callable[[Type[T]], Type[T]]:
    def inner(cls: Type[T]) -> Type[T]:
        extra_schema[cls] = schema
        return cls

    return inner


def _field(*args: Any, **kwargs: Any) -> None:
    return None


def _pydantic_field() -> Callable[..., Any]:
    try:
        import pydantic
    except ModuleNotFoundError:
        return _field
    if pydantic.VERSION < "2":
        return _field
    return pydantic.Field


if TYPE_CHECKING:
    Field = _field
else:
    Field = _pydantic_field()
