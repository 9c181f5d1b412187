"""
run log for the confsplit engine
events are keyed by the configuration count n; no wall-clock timestamps so
that exported logs are reproducible
"""
INFO = "info"
WARNING = "warning"
CHECK = "check"
CERTIFICATE = "certificate"


class EventLogger:
    def __init__(self):
        self.events = []

    def add_event(self, n, description, event_type=INFO, **data):
        """add a new event to the log"""
        event = {
            "n": n,
            "description": description,
            "type": event_type,
        }
        if data:
            event["data"] = data
        self.events.append(event)
        return event

    def warn(self, n, description, **data):
        return self.add_event(n, description, WARNING, **data)

    def get_events_by_n(self, n):
        """get all events for one configuration count"""
        return [event for event in self.events if event["n"] == n]

    def get_events_by_type(self, event_type):
        return [event for event in self.events if event["type"] == event_type]

    def get_all_events(self):
        return self.events

    def warnings(self):
        """warning descriptions in logging order, without repeats"""
        seen = []
        for event in self.get_events_by_type(WARNING):
            if event["description"] not in seen:
                seen.append(event["description"])
        return seen

    def failed_checks(self):
        return [event for event in self.get_events_by_type(CHECK)
                if not event.get("data", {}).get("passed", True)]

    def generate_history_summary(self):
        """readable summary of the run grouped by n"""
        if not self.events:
            return "No events recorded."

        counts = sorted({event["n"] for event in self.events if event["n"] is not None})
        if any(event["n"] is None for event in self.events):
            counts.insert(0, None)

        summary = []
        for n in counts:
            heading = "setup" if n is None else f"n = {n}"
            summary.append(f"\n== {heading} ==\n")
            for event in self.get_events_by_n(n):
                summary.append(f"[{event['type']}] {event['description']}")

        return "\n".join(summary)
