import uuid

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='SimulationRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('kind', models.CharField(choices=[('pipeline', 'Toy pipeline'), ('scs_sweep', 'SCS vs SNR sweep'), ('papr_sweep', 'PAPR / clipping sweep'), ('csi_sweep', 'CSI error sweep')], db_index=True, max_length=20)),
                ('status', models.CharField(choices=[('PENDING', 'Pending'), ('RUNNING', 'Running'), ('COMPLETED', 'Completed'), ('FAILED', 'Failed')], db_index=True, default='PENDING', max_length=20)),
                ('config', models.JSONField(blank=True, default=dict, help_text='Section overrides applied to the default experiment config.')),
                ('seed', models.PositiveBigIntegerField(default=0)),
                ('trials', models.PositiveIntegerField(default=100)),
                ('row_count', models.PositiveIntegerField(default=0)),
                ('result_path', models.CharField(blank=True, max_length=500)),
                ('summary', models.JSONField(blank=True, null=True)),
                ('error', models.TextField(blank=True)),
                ('started_at', models.DateTimeField(blank=True, null=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['status', 'created_at'], name='simrun_status_created_idx')],
            },
        ),
    ]
