#!/usr/bin/env python3
# Copyright 2026 The tsgauto Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the labelled statement corpus used for classifier training.

Each component type has a handful of statement templates; slots are filled
from small word lists plus random identifiers so that no two lines repeat.

    python3 tools/gen_corpus.py --per-class 45 --seed 7 > data/corpus.jsonl
"""

import argparse
import json
import random
import string


def ident(rng, n=8, alphabet=string.ascii_lowercase + string.digits):
    return "".join(rng.choice(alphabet) for _ in range(n))


def guid(rng):
    h = "0123456789abcdef"
    parts = [8, 4, 4, 4, 12]
    return "-".join("".join(rng.choice(h) for _ in range(p)) for p in parts)


def camel(rng, words, k=2):
    return "".join(w.capitalize() for w in rng.sample(words, k))


NOUNS = ["incident", "tenant", "mailbox", "pipeline", "alert", "quota", "node",
         "request", "latency", "failure", "storage", "account", "region", "job",
         "backlog", "cluster", "queue", "session", "policy", "service"]
TABLE_WORDS = ["Tba", "Filtering", "Exception", "Auto", "Triage", "Icm", "Ner",
               "Storm", "Events", "Login", "Request", "Trace", "Usage", "Error",
               "Heartbeat", "Service", "Health", "Delivery", "Queue", "Metric"]
COLUMNS = ["Timestamp", "TenantId", "State", "Region", "IncidentId", "Level",
           "UserId", "ResultCode", "Duration", "Source", "Message", "MachineName"]


def adf(rng):
    sub = guid(rng) if rng.random() < 0.7 else "SUB" + str(rng.randint(1, 99))
    rg = rng.choice(["rg", "prod", "ppe", "data", "etl"]) + "-" + ident(rng, 4)
    fac = rng.choice(["factory", "adf", "ingest", "copy"]) + ident(rng, 3)
    t = rng.randrange(5)
    if t == 0:
        return f"https://adf.azure.com/subsc/{sub}/resourceGroups/{rg}/factories/{fac}"
    if t == 1:
        return (f"https://adf.azure.com/en-us/monitoring/pipelineruns?factory=/subscriptions/"
                f"{sub}/resourceGroups/{rg}/providers/Microsoft.DataFactory/factories/{fac}")
    if t == 2:
        return (f"http://adf.azure.com/authoring/pipeline/{rng.choice(NOUNS)}Copy?factory="
                f"/subscriptions/{sub}/resourceGroups/{rg}/providers/Microsoft.DataFactory/factories/{fac}")
    return f"https://adf.azure.com/subsc/{sub}/resourceGroups/{rg}/factories/{fac}/pipelines/{ident(rng, 6)}"


def jarvis(rng):
    t = rng.randrange(5)
    region = rng.choice(["west", "east", "eu", "asia"])
    if t == 0:
        return f"https://jarvis.msft.net/dashboard/share/{ident(rng, 10).upper()}"
    if t == 1:
        return f"https://jarvis-{region}.dc.ad.msft.net/dashboard/share/{ident(rng, 8).upper()}"
    if t == 2:
        team = camel(rng, NOUNS)
        return (f"https://jarvis-{region}.dc.ad.msft.net/dashboard/{team}/{rng.choice(NOUNS).capitalize()}"
                f"/Overview?overrides=[{{\"query\":\"//*[id='Region']\",\"replacement\":\"{region}\"}}]")
    return (f"https://jarvis.msft.net/?page=logs&be=DGrep&time={rng.randint(2019, 2023)}-0"
            f"{rng.randint(1, 9)}-1{rng.randint(0, 9)}T00:00:00.000Z&offset=~{rng.randint(1, 60)}")


def kusto(rng):
    table = camel(rng, TABLE_WORDS, rng.choice([2, 3]))
    col = rng.choice(COLUMNS)
    col2 = rng.choice(COLUMNS)
    val = rng.choice(["\"FLORIDA\"", "\"Error\"", "'" + ident(rng, 6) + "'", str(rng.randint(1, 500))])
    ago = f"ago({rng.randint(1, 30)}{rng.choice('dhm')})"
    tail = rng.choice([
        "| count",
        f"| take {rng.randint(5, 100)}",
        f"| summarize count() by {col2}",
        f"| sort by {col} desc",
        f"| project {col}, {col2}",
        f"| summarize avg({col}) by bin(Timestamp, 1h)",
    ])
    t = rng.randrange(5)
    if t == 0:
        return f"{table} | where {col} == {val} {tail}"
    if t == 1:
        cl = ident(rng, 6, string.ascii_lowercase)
        return (f"cluster('{cl}').database('{ident(rng, 5, string.ascii_lowercase)}').{table} "
                f"| where Timestamp > {ago} {tail}")
    if t == 2:
        return f"let result = {table} | where {col} != {val} {tail}"
    return f"{table} | where Timestamp > {ago} | where {col} contains \"{ident(rng, 5)}\" {tail}"


PS_VERBS = ["Get", "Set", "Test", "Restart", "Stop", "Start", "Remove", "New", "Import"]
PS_NOUNS = ["Service", "Process", "ChildItem", "Content", "NetConnection", "Module",
            "Item", "Acl", "EventLog", "ScheduledTask", "Date", "Location"]
PS_PARAMS = ["-Name", "-Path", "-ComputerName", "-Force", "-Recurse", "-Filter",
             "-ErrorAction", "-Port", "-Credential", "-LogName"]


def powershell(rng):
    t = rng.randrange(5)
    if t == 0:
        var = rng.choice(["tenant", "path", "server", "user", "logName", "subscriptionId"])
        val = rng.choice(["<your tenant id/name>", "C:\\logs\\" + ident(rng, 5), ident(rng, 7)])
        return f"${var} = \"{val}\""
    cmd = f"{rng.choice(PS_VERBS)}-{rng.choice(PS_NOUNS)}"
    params = " ".join(f"{p} {rng.choice([ident(rng, 6), '$' + ident(rng, 4, string.ascii_lowercase), 'True', str(rng.randint(1, 9000))])}"
                      for p in rng.sample(PS_PARAMS, rng.randint(1, 3)))
    if t == 1:
        return f"{cmd} {params}"
    if t == 2:
        return f"${ident(rng, 4, string.ascii_lowercase)} = {cmd} {params}"
    if t == 3:
        return f"{cmd} {params} | Format-Table -AutoSize"
    return f"Test-PolicyDistributionStatus -Org {ident(rng, 5)}.com -PolicyId {ident(rng, 8)} -Verbose True"


TORUS_CMDS = ["Get-TransportRule", "Get-Mailbox", "Set-TransportConfig", "Get-AcceptedDomain",
              "Get-DlpSensitiveInformationType", "Get-OrganizationConfig", "Get-MessageTrace",
              "Set-Mailbox", "Get-InboundConnector", "Enable-OrganizationCustomization"]
TORUS_PARAMS = ["-Organization", "-Identity", "-Forest", "-DomainController", "-ResultSize",
                "-Arbitration", "-SenderAddress", "-RecipientAddress"]


def torus(rng):
    cmd = rng.choice(TORUS_CMDS)
    params = " ".join(f"{p} {rng.choice(['$org', '$identity', '$tenant', ident(rng, 5) + '.onmicrosoft.com', 'Unlimited'])}"
                      for p in rng.sample(TORUS_PARAMS, rng.randint(1, 2)))
    t = rng.randrange(3)
    if t == 0:
        return f"${rng.choice(['rules', 'mb', 'm', 'cfg', 'domains', 'trace'])} = {cmd} {params}"
    if t == 1:
        return f"{cmd} {params}"
    return f"EOP: ${rng.choice(['rulePackage', 'rules', 'conn'])} = {cmd} {params}"


MERLIN_CMDS = ["Update-GridTenantProvisioningStamp", "Get-GridFarm", "Move-GridSite",
               "Get-GridTenant", "Repair-GridContentDatabase", "Invoke-GridJob",
               "Get-GridSiteSubscription", "Reset-GridTenantCache", "Set-GridFarmState"]


def merlin(rng):
    cmd = rng.choice(MERLIN_CMDS)
    args = " ".join(rng.choice(["$TenantId", "$SiteId", "$FarmId", "$DatabaseId", guid(rng)])
                    for _ in range(rng.randint(1, 2)))
    t = rng.randrange(3)
    if t == 0:
        return f"{cmd} {args}"
    if t == 1:
        return f"${rng.choice(['farm', 'tenant', 'site', 'db'])} = {cmd} {args}"
    return f"{cmd} {args} -Stamp {ident(rng, 4).upper()}"


NL_COND = ["the status is green", "the status is False", "the alert persists for more than 30 minutes",
           "command returns True", "the queue length keeps growing", "average latency is > 300 ms",
           "you need to force the file sync", "it is due to any other error",
           "the mailbox is not found", "the job fails again", "the dashboard shows no data",
           "the tenant is in a degraded state", "the error rate is above 5 percent",
           "the certificate has expired", "the replica count drops below two",
           "more than ten requests fail", "the deployment is still in progress",
           "the customer reports data loss"]
NL_ACT = ["the problem is self-resolved", "create an incident", "delete the resource",
          "contact the reporting team", "you can use ForceSync parameter",
          "escalate to the on-call engineer", "restart the worker role", "mitigate by failing over",
          "run the cleanup job", "check the pipeline logs", "notify the service owner",
          "roll back the latest deployment", "you should page the secondary on-call",
          "restart the affected nodes", "close the incident as a duplicate",
          "retry the request after five minutes"]
NL_PLAIN = ["This guide covers mailbox provisioning failures.", "Wait for ten minutes before retrying.",
            "Make sure you have access to the production environment.",
            "Open the dashboard and review the error trend.", "Contact the owning team on Teams.",
            "The alert fires when the backlog exceeds the threshold.",
            "Note down the incident number for the postmortem.",
            "Acknowledge the incident before starting mitigation.",
            "Verify that the fix has been deployed to all regions.",
            "Share the findings in the incident bridge.",
            "Collect the correlation id from the customer before you start.",
            "Do not restart the primary node during business hours.",
            "Most of these alerts are transient and clear on their own.",
            "The service owner must approve any configuration change.",
            "Record every step you take in the incident timeline.",
            "Keep the customer updated every thirty minutes.",
            "This alert usually means the storage account is throttled.",
            "Check with the networking team whether a change is in flight.",
            "Confirm the region before running any mitigation.",
            "The dashboard below shows the last seven days of traffic.",
            "Wait until the queue drains before closing the incident.",
            "Only the on-call engineer should run the scripts in this section."]
NL_HEADINGS = ["Overview", "Prerequisites", "Investigation steps", "Escalation", "Mitigation",
               "Root cause analysis", "Verify the fix", "Background", "Known issues", "Contacts",
               "Collect diagnostics", "Symptoms", "Next steps", "Validate the rollback"]


def natural_language(rng):
    t = rng.randrange(5)
    sub = rng.choice(["If", "When", "Once", "If", "In case"])
    c, a = rng.choice(NL_COND), rng.choice(NL_ACT)
    if t == 0:
        return f"{sub} {c}, {a}."
    if t == 1:
        return f"{sub} {c} {a}"
    if t == 2:
        return f"{sub} {c}, then {a}."
    if t == 3:
        return rng.choice(NL_PLAIN)
    # Markdown headings are prose too.
    return "#" * rng.randint(1, 3) + " " + rng.choice(NL_HEADINGS)


GENERATORS = {
    "adf": adf,
    "jarvis": jarvis,
    "kusto": kusto,
    "powershell": powershell,
    "torus": torus,
    "merlin": merlin,
    "natural_language": natural_language,
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-class", type=int, default=45)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    seen = set()
    rows = []
    for label, gen in GENERATORS.items():
        n = 0
        attempts = 0
        while n < args.per_class:
            attempts += 1
            if attempts > args.per_class * 200:
                raise SystemExit(f"could not generate {args.per_class} distinct {label} lines")
            text = gen(rng)
            if text in seen:
                continue
            seen.add(text)
            rows.append({"text": text, "label": label})
            n += 1
    for r in rows:
        print(json.dumps(r, ensure_ascii=False))


if __name__ == "__main__":
    main()
