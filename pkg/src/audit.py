"""JSONL audit trail for CLI runs. Records are written for people; results never depend on them."""
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, List, Optional

from pydantic import ValidationError

from src.config import ENGINE_VERSION
from src.schemas import AuditEvent


def log_event(
    audit_path: Path,
    run_id: str,
    event_type: str,
    payload: Optional[dict[str, Any]] = None,
    engine_version: str = ENGINE_VERSION,
) -> AuditEvent:
    """Append one AuditEvent as a JSON line and return it."""
    event = AuditEvent(
        timestamp=datetime.now(tz=timezone.utc).isoformat(),
        run_id=run_id,
        event_type=event_type,
        engine_version=engine_version,
        payload=payload or {},
    )
    with open(audit_path, "a", encoding="utf-8") as f:
        f.write(event.model_dump_json() + "\n")
    return event


def read_events(audit_path: Path) -> List[dict[str, Any]]:
    """Events of one audit file in write order; lines that do not parse are skipped."""
    if not audit_path.exists():
        return []
    events = []
    for line in audit_path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            events.append(AuditEvent.model_validate_json(line).model_dump())
        except ValidationError:
            continue
    return events
