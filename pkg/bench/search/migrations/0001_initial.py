# Generated by Django 5.1.6 on 2026-10-18 09:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('kind', models.CharField(choices=[('iso', 'Isoperimetric inequality'), ('uniqueness', 'Uniqueness of the extremal class'), ('conjecture', 'Linear stability conjecture'), ('prop41', 'Stability dichotomy'), ('fraclex', 'Fractional lex bounds'), ('slices', 'Influence decomposition'), ('shifting', 'Shifting suite'), ('cascade', 'Cascade to a dictatorship'), ('bootstrap', 'Bootstrapping lemmas')], max_length=20)),
                ('n', models.IntegerField(blank=True, help_text='Dimension of the cube, if the run has one', null=True)),
                ('parameters', models.JSONField(default=dict, help_text='Configuration the run was made with')),
                ('passed', models.BooleanField(default=False)),
                ('summary', models.JSONField(default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'db_table': 'verification_runs',
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='Finding',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('kind', models.CharField(max_length=40)),
                ('n', models.IntegerField()),
                ('m', models.IntegerField(blank=True, help_text='Family size', null=True)),
                ('excess', models.IntegerField(blank=True, help_text='|dF| - |dL|', null=True)),
                ('dist', models.IntegerField(blank=True, help_text='Distance to the lex class', null=True)),
                ('family', models.JSONField(blank=True, help_text='Family literal', null=True)),
                ('payload', models.JSONField(default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='findings', to='search.verificationrun')),
            ],
            options={
                'db_table': 'verification_findings',
                'ordering': ['run', 'id'],
            },
        ),
    ]
