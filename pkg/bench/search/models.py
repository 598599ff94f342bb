from django.db import models


class VerificationRun(models.Model):
    """
    One archived `verify ... --record` run.
    """

    KINDS = [
        ("iso", "Isoperimetric inequality"),
        ("uniqueness", "Uniqueness of the extremal class"),
        ("conjecture", "Linear stability conjecture"),
        ("prop41", "Stability dichotomy"),
        ("fraclex", "Fractional lex bounds"),
        ("slices", "Influence decomposition"),
        ("shifting", "Shifting suite"),
        ("cascade", "Cascade to a dictatorship"),
        ("bootstrap", "Bootstrapping lemmas"),
    ]

    kind = models.CharField(max_length=20, choices=KINDS)
    n = models.IntegerField(null=True, blank=True, help_text="Dimension of the cube, if the run has one")
    parameters = models.JSONField(default=dict, help_text="Configuration the run was made with")
    passed = models.BooleanField(default=False)
    summary = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        db_table = "verification_runs"
        ordering = ["-created_at"]

    def __str__(self):
        status = "passed" if self.passed else "findings"
        return f"{self.kind} n={self.n} ({status})"

    @property
    def finding_count(self):
        return self.findings.count()


class Finding(models.Model):
    """
    A single reported family: a counterexample, a violation or a witness.
    """

    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name="findings")
    kind = models.CharField(max_length=40)
    n = models.IntegerField()
    m = models.IntegerField(null=True, blank=True, help_text="Family size")
    excess = models.IntegerField(null=True, blank=True, help_text="|dF| - |dL|")
    dist = models.IntegerField(null=True, blank=True, help_text="Distance to the lex class")
    family = models.JSONField(null=True, blank=True, help_text="Family literal")
    payload = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = "verification_findings"
        ordering = ["run", "id"]

    def __str__(self):
        return f"{self.kind} (n={self.n}, m={self.m}) in run {self.run_id}"
