"""
rlct custom error class
"""

from typing import Any, Dict, Iterable, Optional

# Process exit statuses used by the command line
PARSE_STATUS = 2
PRECONDITION_STATUS = 3


class RlctError(Exception):
    """
    rlct Custom Error Class

    Extends the standard Exception class with an error code for programmatic
    handling and the exit status the command line reports for it.

    Example:
        ```python
        try:
            normalize(parse("Omega"))
        except RlctError as e:
            print(f"Error Code: {e.code}")
            print(f"Exit Status: {e.status}")
            print(f"Message: {e.message}")
        ```
    """

    def __init__(
        self,
        message: str = "",
        code: str = "UNKNOWN_ERROR",
        status: int = 1,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Create a new RlctError

        Args:
            message: Error message
            code: Error code for programmatic handling
            status: Process exit status for the command line
            details: Additional error details
        """
        super().__init__(message)
        self.message = message
        self.code = code
        self.status = status
        self.details = details or {}

    @classmethod
    def parse_error(
        cls, message: str, line: Optional[int] = None, column: Optional[int] = None
    ) -> "RlctError":
        """
        Create a lexical or syntax error carrying the input position

        Args:
            message: Parser message
            line: 1-based line of the offending token
            column: 1-based column of the offending token

        Returns:
            RlctError instance
        """
        details: Dict[str, Any] = {}
        if line is not None:
            details["line"] = line
        if column is not None:
            details["column"] = column
        return cls(message, "PARSE_ERROR", PARSE_STATUS, details)

    @classmethod
    def sort_mismatch(cls, expected: str, found: str) -> "RlctError":
        """
        Create a sort-mixing error ("term + test" and the like)

        Args:
            expected: Sort required by the context
            found: Sort that was supplied

        Returns:
            RlctError instance
        """
        return cls(
            f"expected an expression of sort {expected}, found {found}",
            "SORT_MISMATCH",
            PARSE_STATUS,
            {"expected": expected, "found": found},
        )

    @classmethod
    def mixed_sorts(cls, sorts: Iterable[str]) -> "RlctError":
        """A sum whose summands have different sorts"""
        found = " + ".join(sorted(sorts))
        return cls(
            f"summands of one sum must share a sort, found {found}",
            "SORT_MISMATCH",
            PARSE_STATUS,
            {"found": found},
        )

    @classmethod
    def degree_undefined(cls, name: str) -> "RlctError":
        """Variable occurs inside a promoted part, so it has no degree"""
        return cls(
            f"degree of {name} is undefined: it occurs under a promoted part",
            "DEGREE_UNDEFINED",
            PRECONDITION_STATUS,
            {"variable": name},
        )

    @classmethod
    def not_promotion_free(cls, operation: str) -> "RlctError":
        """Full-calculus input given to a promotion-free operation"""
        return cls(
            f"{operation} requires a promotion-free expression",
            "NOT_PROMOTION_FREE",
            PRECONDITION_STATUS,
            {"operation": operation},
        )

    @classmethod
    def not_closed(cls, free: Any) -> "RlctError":
        """Open test given where a closed one is required"""
        names = sorted(free)
        return cls(
            f"expected a closed test, free variables: {', '.join(names)}",
            "NOT_CLOSED",
            PRECONDITION_STATUS,
            {"free_vars": names},
        )

    @classmethod
    def not_normal_form(cls) -> "RlctError":
        """Term still contains a redex"""
        return cls("term is not in normal form", "NOT_NORMAL_FORM", PRECONDITION_STATUS)

    @classmethod
    def not_test_free(cls, operation: str) -> "RlctError":
        """Term contains tau or tbar where a test-free term is required"""
        return cls(
            f"{operation} requires a test-free term",
            "NOT_TEST_FREE",
            PRECONDITION_STATUS,
            {"operation": operation},
        )

    @classmethod
    def env_mismatch(cls, missing: Any) -> "RlctError":
        """Point environment does not cover the free variables"""
        names = sorted(missing)
        return cls(
            f"environment does not bind: {', '.join(names)}",
            "ENV_MISMATCH",
            PRECONDITION_STATUS,
            {"missing": names},
        )

    @classmethod
    def precondition_violated(
        cls, message: str, details: Optional[Dict[str, Any]] = None
    ) -> "RlctError":
        """
        Create a generic precondition error

        Args:
            message: What did not hold
            details: Additional details

        Returns:
            RlctError instance
        """
        return cls(message, "PRECONDITION_VIOLATED", PRECONDITION_STATUS, details)

    @classmethod
    def invalid_labelling(cls, index: int) -> "RlctError":
        """Two occurrences carry the same index"""
        return cls(
            f"index {index} is used more than once",
            "INVALID_LABELLING",
            PRECONDITION_STATUS,
            {"index": index},
        )

    @classmethod
    def validation_error(
        cls, message: str, details: Optional[Dict[str, Any]] = None
    ) -> "RlctError":
        """
        Create a configuration validation error

        Args:
            message: Validation error message
            details: Validation details

        Returns:
            RlctError instance
        """
        return cls(message, "VALIDATION_ERROR", PRECONDITION_STATUS, details)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert exception to dictionary

        Returns:
            Exception as dictionary
        """
        return {
            "message": self.message,
            "code": self.code,
            "status": self.status,
            "details": self.details,
        }

    def __str__(self) -> str:
        """String representation of the error"""
        return f"RlctError({self.code}): {self.message}"

    def __repr__(self) -> str:
        """Representation of the error"""
        return f"RlctError(message='{self.message}', code='{self.code}', status={self.status})"
