"""Exception hierarchy shared by all modules."""


class VietphonError(Exception):
    pass


class UnknownProvince(VietphonError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown province: {self.name!r}"


class MissingMinorDialect(VietphonError):
    pass


class NotASyllable(VietphonError, ValueError):
    """The token does not fit the Vietnamese syllable template."""


class MultipleToneMarks(NotASyllable):
    pass


class NoVowel(NotASyllable):
    pass


class TrailingGarbage(NotASyllable):
    pass


class UnwritableSyllable(VietphonError, ValueError):
    pass


class NoPreimage(VietphonError, LookupError):
    pass


class EmptyReference(VietphonError, ValueError):
    pass


class EmptyInput(VietphonError, ValueError):
    pass


class NoSharedTypes(VietphonError, ValueError):
    pass


class MalformedRecord(VietphonError, ValueError):
    pass


class RuleFileError(VietphonError, ValueError):
    pass
