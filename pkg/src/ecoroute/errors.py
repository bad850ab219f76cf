"""Exception hierarchy shared by every ecoroute module."""


class EcoRouteError(Exception):
    """Base class for all errors raised by ecoroute."""


class ConfigError(EcoRouteError):
    """A configuration or coefficient file is missing, malformed or inconsistent."""


class OsmParseError(EcoRouteError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OsmLinkError(EcoRouteError):
    def __init__(self, way_id, missing):
        self.way_id = way_id
        self.missing = list(missing)
        super().__init__(
            f"way {way_id} references absent node(s) {', '.join(map(str, self.missing))}"
        )


class EmptyGraphError(EcoRouteError):
    """No routable way survived ingestion, or a query hit an empty graph."""


class DemParseError(EcoRouteError):
    def __init__(self, message, row=None, col=None):
        self.row = row
        self.col = col
        if row is not None:
            message = f"row {row}, col {col}: {message}"
        super().__init__(message)


class DemDimensionError(DemParseError):
    pass


class FuelDomainError(EcoRouteError, ValueError):
    """Speed outside the validated domain of the consumption curves."""


class RouteError(EcoRouteError):
    def __init__(self, message, leg=None):
        self.leg = leg
        super().__init__(message)


class PolylineDecodeError(EcoRouteError, ValueError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"offset {offset}: {message}")


class GeocoderUnavailable(EcoRouteError):
    """Transport failure talking to a geocoding provider; the call may be retried."""

    retriable = True
