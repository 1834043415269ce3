""":class:`INIParser` ini parser implementation.
"""
from __future__ import annotations
import os
from configparser import ConfigParser
import re
from typing import Any, Callable, Dict, ItemsView, Iterator, List, Mapping, Optional, ValuesView
import numpy as np

ROOT_PATH = os.path.dirname(__file__)

def str_to_bool(string: str) -> bool:
    """Parse a boolean flag written in an INI file or an environment variable.

    Args:
        string : Textual flag ('true', 'yes', 'on', '1' and their negatives).

    Returns:
        Boolean value of the flag.

    Raises:
        ValueError : If `string` is not a recognised flag.
    """
    if isinstance(string, (bool, np.bool_)):
        return bool(string)
    flag = str(string).strip().lower()
    if flag in ('true', 'yes', 'on', '1'):
        return True
    if flag in ('false', 'no', 'off', '0'):
        return False
    raise ValueError(f"Invalid boolean flag '{string}'")

class INIParser:
    """Base class for the parameter containers backed by INI files. The
    options are grouped in sections listed in `attr_dict`, every option is
    cast with the type given in `fmt_dict`. An option is reachable both
    as ``params.section['option']`` and as ``params.option``.

    Args:
        kwargs : A dictionary of options for every section in `attr_dict`.

    Attributes:
        attr_dict : Sections and their options.
        fmt_dict : Types of the options. A key is either a section name
            (default type for the section) or 'section/option'.
        env_dict : Environment variables overriding the options, mapped to
            the option names.
        known_types : Look-up dictionary of the supported types.

    Raises:
        AttributeError : If an option listed in `attr_dict` has not been
            provided.
    """
    known_types = {'int': int, 'bool': str_to_bool, 'float': float, 'str': str}
    attr_dict: Dict[str, tuple] = {}
    fmt_dict: Dict[str, str] = {}
    env_dict: Dict[str, str] = {}
    LIST_SPLITTER = r'\s*,\s*'
    LIST_MATCHER = r'^\[([\s\S]*)\]$'

    def __init__(self, **kwargs: Dict[str, Any]) -> None:
        self.__dict__['ini_dict'] = {section: {} for section in self.attr_dict}
        self.__dict__['_lookup'] = self._lookup_dict()
        for section, options in self.attr_dict.items():
            if section not in kwargs:
                raise AttributeError(f"The '{section}' section has not been provided")
            self.ini_dict[section] = {option: self._get_value(section, option, kwargs[section])
                                      for option in options}

    def _get_value(self, section: str, option: str, values: Mapping[str, Any]) -> Any:
        if option not in values:
            raise AttributeError(f"The '{option}' option has not been provided")
        fmt = self.get_format(section, option)
        value = values[option]
        if isinstance(value, np.ndarray):
            if value.ndim > 1:
                raise ValueError(f"The '{option}' option must be one-dimensional")
            value = value.tolist()
        if isinstance(value, (list, tuple)):
            return [fmt(part) for part in value]
        return fmt(value)

    @classmethod
    def _lookup_dict(cls) -> Dict[str, str]:
        lookup = {}
        for section, options in cls.attr_dict.items():
            for option in options:
                lookup[option] = section
        return lookup

    @classmethod
    def read_ini(cls, ini_file: str) -> ConfigParser:
        """Read the `ini_file` and return an instance of
        :class:`configparser.ConfigParser` class.

        Args:
            ini_file : Path to the file.

        Returns:
            Parser object with all the data contained in the INI file.

        Raises:
            ValueError : If the file doesn't exist.
        """
        if not os.path.isfile(ini_file):
            raise ValueError(f"File {ini_file} doesn't exist")
        ini_parser = ConfigParser()
        ini_parser.read(ini_file)
        return ini_parser

    @classmethod
    def get_format(cls, section: str, option: str) -> Callable[[Any], Any]:
        """Return the option's type specified by `fmt_dict`.

        Args:
            section : Option's section.
            option : Option's name.

        Returns:
            Type (or parser function) of the option.
        """
        fmt = cls.fmt_dict.get(f'{section}/{option}')
        if not fmt:
            fmt = cls.fmt_dict.get(section)
        return cls.known_types.get(fmt, str)

    @classmethod
    def get_value(cls, ini_parser: ConfigParser, section: str, option: str) -> Any:
        """Return an option from an INI file's parser object `ini_parser`.
        Values written as ``[a, b, c]`` are parsed into lists.

        Args:
            ini_parser : A parser object of an INI file.
            section : Option's section.
            option : Option's name.

        Returns:
            Option's value imported from the INI file.
        """
        fmt = cls.get_format(section, option)
        string = ini_parser.get(section, option)
        is_list = re.search(cls.LIST_MATCHER, string.strip())
        if is_list:
            if not is_list.group(1).strip():
                return []
            return [fmt(part.strip('\'\"'))
                    for part in re.split(cls.LIST_SPLITTER, is_list.group(1).strip())]
        return fmt(string.strip())

    @classmethod
    def _import_ini(cls, ini_file: str) -> Dict[str, Dict[str, Any]]:
        ini_parser = cls.read_ini(ini_file)
        kwargs = {}
        for section, options in cls.attr_dict.items():
            kwargs[section] = {option: cls.get_value(ini_parser, section, option)
                               for option in options}
        return kwargs

    @classmethod
    def _import_env(cls, kwargs: Dict[str, Dict[str, Any]],
                    environ: Optional[Mapping[str, str]]=None) -> Dict[str, Dict[str, Any]]:
        if environ is None:
            environ = os.environ
        lookup = cls._lookup_dict()
        for variable, option in cls.env_dict.items():
            if environ.get(variable):
                kwargs[lookup[option]][option] = environ[variable]
        return kwargs

    def __getattr__(self, attr: str) -> Any:
        lookup = self.__dict__.get('_lookup', {})
        if attr in lookup:
            return self.__dict__['ini_dict'][lookup[attr]][attr]
        if attr in self.__dict__.get('ini_dict', {}):
            return self.__dict__['ini_dict'][attr]
        raise AttributeError(attr + " doesn't exist")

    def __setattr__(self, attr: str, value: Any) -> None:
        if attr in self._lookup:
            section = self._lookup[attr]
            self.ini_dict[section][attr] = self._get_value(section, attr, {attr: value})
        elif attr in self.ini_dict:
            self.ini_dict[attr] = value
        else:
            super().__setattr__(attr, value)

    def __getitem__(self, attr: str) -> Any:
        return self.__getattr__(attr)

    def __iter__(self) -> Iterator[str]:
        return iter(self._lookup)

    def __contains__(self, attr: str) -> bool:
        return attr in self._lookup

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.ini_dict!r})"

    def keys(self) -> List[str]:
        """Return the option names. Together with :meth:`__getitem__` this
        lets the container be unpacked as ``**params``.

        Returns:
            List of the options.
        """
        return list(self)

    def items(self) -> ItemsView:
        return dict(self).items()

    def values(self) -> ValuesView:
        return dict(self).values()

    def export_dict(self) -> Dict[str, Dict[str, Any]]:
        """Return a nested :class:`dict` (section -> option -> value).

        Returns:
            Dictionary with all the options contained in the object.
        """
        return {section: dict(options) for section, options in self.ini_dict.items()}

    def export_ini(self) -> ConfigParser:
        """Return a :class:`configparser.ConfigParser` object with all the
        options exported from the object.

        Returns:
            A parser object ready to be written to a file.
        """
        ini_parser = ConfigParser()
        for section, options in self.ini_dict.items():
            ini_parser[section] = {option: self._to_string(value)
                                   for option, value in options.items()}
        return ini_parser

    @staticmethod
    def _to_string(value: Any) -> str:
        if isinstance(value, (list, tuple)):
            return '[' + ', '.join(str(part) for part in value) + ']'
        return str(value)
