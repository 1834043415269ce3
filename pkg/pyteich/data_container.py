""":class:`DataContainer` class implementation. Every record of the
library (surface points, triples, geodesics, angles, orbits, series
reports) is a data container: a fixed set of named attributes, validated
on construction and read-only afterwards.
"""
from __future__ import annotations
from typing import (Any, Callable, Dict, ItemsView, Iterator, List, Optional,
                    Type, TypeVar, ValuesView)
import numpy as np

T = TypeVar('T')

class dict_to_object:
    """Wraps a method returning a dictionary of updated attributes, so that
    the call returns a new container of the same class with these
    attributes replaced and all the others copied.

    Args:
        finstance : Function object of the wrapped method.
    """
    def __init__(self, finstance: Callable[..., Dict]) -> None:
        self.finstance = finstance
        self.__doc__ = finstance.__doc__

    def __get__(self, instance: T, cls: Type[T]) -> Callable[..., T]:
        method = self.finstance.__get__(instance, cls)

        def wrapper(*args: Any, **kwargs: Any) -> T:
            dct = dict(instance.items())
            dct.update(method(*args, **kwargs))
            return cls(**dct)

        for attr in ('__doc__', '__name__', '__qualname__', '__module__'):
            setattr(wrapper, attr, getattr(self.finstance, attr))
        wrapper.__wrapped__ = method
        return wrapper

class DataContainer:
    """Abstract data container class.

    Args:
        kwargs : Values of the attributes specified in `attr_set` and
            `init_set`.

    Attributes:
        attr_set : Set of attributes in the container which are necessary
            to initialize in the constructor.
        init_set : Set of optional data attributes.

    Raises:
        ValueError : If an attribute specified in `attr_set` has not been
            provided or an unknown attribute is passed.
        AttributeError : On any assignment after the construction.
    """
    attr_set, init_set = set(), set()

    def __init__(self, **kwargs: Any) -> None:
        for attr in self.attr_set:
            if kwargs.get(attr, None) is None:
                raise ValueError(f'Attribute {attr} has not been provided')

        for attr in self.init_set:
            self.__dict__[attr] = None

        for attr, value in kwargs.items():
            if attr not in self:
                raise ValueError(f'Parameter {attr} is invalid')
            self.__dict__[attr] = value

    def __setattr__(self, attr: str, value: Any) -> None:
        raise AttributeError(f"{type(self).__name__} is read-only, can't set '{attr}'")

    def __getstate__(self) -> Dict[str, Any]:
        return {attr: self.__dict__.get(attr) for attr in self}

    def __setstate__(self, state: Dict[str, Any]) -> None:
        self.__dict__.update(state)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.attr_set | self.init_set))

    def __contains__(self, attr: str) -> bool:
        return attr in self.attr_set | self.init_set

    def __getitem__(self, attr: str) -> Any:
        if attr not in self:
            raise KeyError(attr)
        return self.__dict__.get(attr)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return all(_equal(self.get(attr), other.get(attr)) for attr in self)

    __hash__ = None

    def __repr__(self) -> str:
        with np.printoptions(precision=8, threshold=10):
            return f'{type(self).__name__}(' + ', '.join(f'{attr}={self.get(attr)!r}'
                                                          for attr in self.contents()) + ')'

    def get(self, attr: str, value: Optional[Any]=None) -> Any:
        """Retrieve a dataset, return `value` if the attribute is not found.

        Args:
            attr : Data attribute.
            value : Data which is returned if the attribute is not found.

        Returns:
            Attribute's data stored in the container, `value` if `attr`
            is not found.
        """
        result = self.__dict__.get(attr, None)
        return value if result is None else result

    def contents(self) -> List[str]:
        """Return a list of the attributes stored in the container.

        Returns:
            List of the attributes stored in the container.
        """
        return [attr for attr in self if self.__dict__.get(attr) is not None]

    def keys(self) -> List[str]:
        return list(self)

    def items(self) -> ItemsView:
        return {attr: self.__dict__.get(attr) for attr in self}.items()

    def values(self) -> ValuesView:
        return {attr: self.__dict__.get(attr) for attr in self}.values()

    def export_dict(self) -> Dict[str, Any]:
        """Return the stored attributes as plain Python objects. Nested
        containers are exported recursively, numpy scalars and arrays are
        converted to floats and lists, other objects to strings.

        Returns:
            A JSON-ready dictionary.
        """
        return {attr: _export(self.__dict__[attr]) for attr in self.contents()}

def _equal(first: Any, second: Any) -> bool:
    if isinstance(first, np.ndarray) or isinstance(second, np.ndarray):
        return np.array_equal(first, second)
    return first == second

def _export(value: Any) -> Any:
    if isinstance(value, DataContainer):
        return value.export_dict()
    if isinstance(value, dict):
        return {str(key): _export(val) for key, val in value.items()}
    if isinstance(value, np.ndarray):
        return [_export(val) for val in value.tolist()]
    if isinstance(value, (list, tuple)) and not hasattr(value, '_fields'):
        return [_export(val) for val in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if value is None or isinstance(value, str):
        return value
    return str(value)
