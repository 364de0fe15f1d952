#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SDSRA ajanı

Beceri güdümlü eylem seçimi, beceri etiketli deneyim belleği, eleştirmen ve
politika türev adımları ile periyodik beceri/ilgi puanı güncellemelerini
yürütür. mode=sac iken beceri mekanizması devre dışıdır ve ajan standart
yumuşak aktör-eleştirmen olarak çalışır.
"""

import os
import math
import logging
from dataclasses import dataclass, field

import numpy as np

from network.nn_core import DEFAULT_HIDDEN, ParamVector, AdamState, adam_step
from network.checkpoint import save_params, load_params
from policy.gaussian_policy import GaussianPolicy, sample, mean_action, entropy, mixture_entropy_estimate
from algorithm.skills import SkillSet, SkillBatch, selection_probs, select_skill, skill_loss, update_relevance
from algorithm.sac_core import CriticPair, TdBatch, td_target, critic_loss, policy_loss_reparam, policy_loss_score_function, soft_update
from algorithm.replay_buffer import ReplayBuffer, Transition
from utils.errors import ShapeError, NonFiniteError, TrainingDivergedError

logger = logging.getLogger(__name__)

MAX_SKILLS = 8
MODES = ("sdsra", "sac")
POLICY_LOSSES = ("reparam", "score_function")
EVAL_POLICIES = ("best", "mixture")

# Değerlendirme bölümleri eğitim tohumlarından ayrık bir tohum aralığı kullanır
EVAL_SEED_OFFSET = 10_000_000


@dataclass
class AgentConfig:
    """
    Algoritma hiperparametreleri
    """
    mode: str = "sdsra"
    n_skills: int = 4
    initial_relevance: float = 0.0
    temperature: float = 1.0
    beta: float = -0.1
    eta: float = 0.1
    skill_update_interval: int = 1000
    skill_phases: bool = True
    alpha: float = 0.2
    gamma: float = 0.99
    tau: float = 0.005
    lr: float = 3e-4
    batch_size: int = 256
    buffer_capacity: int = 1_000_000
    env_steps_per_iteration: int = 1
    gradient_steps_per_iteration: int = 1
    warmup_steps: int = 1000
    seed: int = 0
    policy_loss: str = "reparam"
    hidden: tuple = DEFAULT_HIDDEN
    squash: bool = True
    log_interval: int = 1000
    bootstrap_on_timeout: bool = False
    eval_policy: str = "best"

    def __post_init__(self):
        self.hidden = tuple(int(h) for h in self.hidden)
        if self.mode == "sac" and self.n_skills != 1:
            logger.info(f"mode=sac: beceri sayısı {self.n_skills} yerine 1 kullanılıyor")
            self.n_skills = 1

    def validate(self):
        """
        Aralıkları doğrular

        Returns:
            AgentConfig: Aynı nesne

        Raises:
            ValueError: Aralık dışı değerde
        """
        checks = [
            (self.mode in MODES, f"mode {MODES} değerlerinden biri olmalı"),
            (1 <= self.n_skills <= MAX_SKILLS, f"n_skills [1, {MAX_SKILLS}] aralığında olmalı"),
            (math.isfinite(self.initial_relevance), "initial_relevance sonlu olmalı"),
            (self.temperature > 0, "temperature pozitif olmalı"),
            (math.isfinite(self.beta), "beta sonlu olmalı"),
            (0.0 < self.eta <= 1.0, "eta (0, 1] aralığında olmalı"),
            (self.skill_update_interval >= 1, "skill_update_interval en az 1 olmalı"),
            (self.alpha > 0, "alpha pozitif olmalı"),
            (0.0 <= self.gamma < 1.0, "gamma [0, 1) aralığında olmalı"),
            (0.0 < self.tau <= 1.0, "tau (0, 1] aralığında olmalı"),
            (self.lr > 0, "lr pozitif olmalı"),
            (self.batch_size >= 1, "batch_size en az 1 olmalı"),
            (self.buffer_capacity >= self.batch_size, "buffer_capacity batch_size'dan küçük olamaz"),
            (self.env_steps_per_iteration >= 1, "env_steps_per_iteration en az 1 olmalı"),
            (self.gradient_steps_per_iteration >= 0, "gradient_steps_per_iteration negatif olamaz"),
            (self.warmup_steps >= 0, "warmup_steps negatif olamaz"),
            (self.seed >= 0, "seed negatif olamaz"),
            (self.policy_loss in POLICY_LOSSES, f"policy_loss {POLICY_LOSSES} değerlerinden biri olmalı"),
            (len(self.hidden) >= 1 and all(h > 0 for h in self.hidden), "hidden pozitif genişlikler içermeli"),
            (self.log_interval >= 1, "log_interval en az 1 olmalı"),
            (self.eval_policy in EVAL_POLICIES, f"eval_policy {EVAL_POLICIES} değerlerinden biri olmalı"),
        ]
        for ok, message in checks:
            if not ok:
                raise ValueError(message)
        return self


@dataclass
class LogRecord:
    """
    Tek günlük satırı
    """
    step: int
    episode: int
    episode_return: float
    entropy: float
    active_skill: int
    loss_q1: float
    loss_q2: float
    loss_pi: float
    j_integrated: float
    relevance: tuple


@dataclass
class EvalRecord:
    """
    Deterministik değerlendirme sonucu
    """
    step: int
    mean_return: float
    mean_entropy: float
    mixture_entropy: float


@dataclass
class RunLog:
    """
    Eğitim günlüğü: bölüm sonu ve aralık kayıtları ile değerlendirmeler
    """
    n_skills: int
    records: list = field(default_factory=list)
    evaluations: list = field(default_factory=list)

    def append(self, record):
        if self.records and record.step < self.records[-1].step:
            raise ValueError("Günlük adım numaraları azalmayan olmalıdır")
        self.records.append(record)

    def episode_records(self):
        return [r for r in self.records if math.isfinite(r.episode_return)]

    def __len__(self):
        return len(self.records)


class SdsraAgent:
    """
    SDSRA / SAC ajanı
    """

    def __init__(self, config, env_spec):
        """
        Ağları, iyileştiricileri ve belleği tohumdan oluşturur

        Tohum eşlemesi: SeedSequence(seed) altı akışa bölünür: ağ başlatma,
        beceri başlatma, ortam bölümleri, eylem gürültüsü, topluluk seçimi ve
        beceri seçimi. Beceri mekanizması diğer akışları tüketmez.

        Args:
            config (AgentConfig): Hiperparametreler
            env_spec (EnvSpec): Ortam tanımı
        """
        self.config = config.validate()
        self.spec = env_spec
        self.logger = logging.getLogger(__name__)

        streams = np.random.SeedSequence(config.seed).spawn(6)
        (self.init_rng, self.skill_init_rng, self.env_rng,
         self.action_rng, self.batch_rng, self.selection_rng) = [np.random.default_rng(s) for s in streams]

        ds, da = env_spec.state_dim, env_spec.action_dim
        self.policy = GaussianPolicy(ds, da, hidden=config.hidden, squash=config.squash, rng=self.init_rng)
        self.critics = CriticPair(ds, da, hidden=config.hidden, gamma=config.gamma, alpha=config.alpha,
                                  tau=config.tau, rng=self.init_rng)
        self.skills = SkillSet.create(config.n_skills, ds, da, self.skill_init_rng, hidden=config.hidden,
                                      squash=config.squash, initial_relevance=config.initial_relevance,
                                      beta=config.beta, temperature=config.temperature)

        self.policy_opt = AdamState.for_params(self.policy.params, lr=config.lr)
        self.q1_opt = AdamState.for_params(self.critics.q1.params, lr=config.lr)
        self.q2_opt = AdamState.for_params(self.critics.q2.params, lr=config.lr)
        self.skill_opts = [AdamState.for_params(s.policy.params, lr=config.lr) for s in self.skills]

        self.buffer = ReplayBuffer(config.buffer_capacity, ds, da)

        # Beceri aşamaları kapalıyken beceriler π_φ'ye bağlıdır
        self.skills_tied = config.mode == "sac" or not config.skill_phases
        self._interval = [[] for _ in range(len(self.skills))]

        self.total_steps = 0
        self.gradient_steps = 0
        self.episodes = 0
        self.last_losses = {"loss_q1": math.nan, "loss_q2": math.nan, "loss_pi": math.nan}
        self._last_sample = None
        self._skip_logged = False

        self.logger.info(f"Ajan oluşturuldu: mode={config.mode}, N={len(self.skills)}, seed={config.seed}")

    # ------------------------------------------------------------------
    # Eylem seçimi
    # ------------------------------------------------------------------

    def acting_policy(self, skill_index):
        """
        Beceri sırasına karşılık gelen eylem politikası
        """
        if self.skills_tied:
            return self.policy
        return self.skills[skill_index].policy

    def act(self, state, rng=None):
        """
        Eylem ve beceri sırası döndürür

        mode=sdsra: beceri softmax olasılıklarından, eylem o beceriden
        örneklenir; mode=sac: eylem π_φ'den, beceri sırası 0.

        Args:
            state (array-like): Durum
            rng (numpy.random.Generator, optional): Verilirse hem beceri hem gürültü için kullanılır

        Returns:
            tuple: ((-1, 1) ölçeğinde eylem, beceri sırası)
        """
        selection_rng = rng if rng is not None else self.selection_rng
        action_rng = rng if rng is not None else self.action_rng
        if self.config.mode == "sac":
            skill_index = 0
        else:
            skill_index = select_skill(self.skills, selection_rng)
        draw = sample(self.acting_policy(skill_index), state, rng=action_rng)
        return draw.action, skill_index

    def _warmup_action(self):
        skill_index = 0 if self.config.mode == "sac" else select_skill(self.skills, self.selection_rng)
        action = self.action_rng.uniform(-1.0, 1.0, size=self.spec.action_dim)
        return action, skill_index

    def store(self, transition):
        """
        Kaydı belleğe ve aralık listesine ekler
        """
        if not (0 <= transition.skill_index < len(self.skills)):
            raise ValueError(f"Geçersiz beceri sırası: {transition.skill_index}")
        self.buffer.store(transition)
        if not self.skills_tied:
            self._interval[transition.skill_index].append((np.asarray(transition.state, dtype=np.float64),
                                                           np.asarray(transition.action, dtype=np.float64)))

    # ------------------------------------------------------------------
    # Türev aşamaları
    # ------------------------------------------------------------------

    def _dump(self, reason):
        return {
            "reason": reason,
            "mode": self.config.mode,
            "seed": self.config.seed,
            "step": self.total_steps,
            "gradient_steps": self.gradient_steps,
            "episode": self.episodes,
            "losses": dict(self.last_losses),
            "relevance": self.skills.relevance.tolist(),
        }

    def gradient_step(self):
        """
        Bir eleştirmen güncellemesi, bir politika güncellemesi ve bir hedef
        güncellemesi (bu sırayla)

        Returns:
            dict | None: Kayıplar; bellek yetersizse None
        """
        b = self.config.batch_size
        if len(self.buffer) < b:
            if not self._skip_logged:
                self.logger.info(f"Bellekte {len(self.buffer)} kayıt var, {b} gerekli; türev adımı atlandı")
                self._skip_logged = True
            return None

        batch = self.buffer.sample(self.batch_rng, b)
        td = TdBatch.with_policy_samples(batch, self.policy, self.action_rng)
        targets = td_target(self.critics, td)
        loss_q1, loss_q2, grad_q1, grad_q2 = critic_loss(self.critics, td, targets)
        self.critics.q1.params, self.q1_opt = adam_step(self.q1_opt, self.critics.q1.params, grad_q1)
        self.critics.q2.params, self.q2_opt = adam_step(self.q2_opt, self.critics.q2.params, grad_q2)

        if self.config.policy_loss == "reparam":
            loss_pi, grad_pi, _ = policy_loss_reparam(self.critics, self.policy, batch.states, rng=self.action_rng)
        else:
            loss_pi, grad_pi = policy_loss_score_function(self.critics, self.policy, batch.states, batch.actions)
        self.policy.params, self.policy_opt = adam_step(self.policy_opt, self.policy.params, grad_pi)

        soft_update(self.critics)

        self.gradient_steps += 1
        self._last_sample = batch
        self.last_losses = {"loss_q1": loss_q1, "loss_q2": loss_q2, "loss_pi": loss_pi}
        if not all(math.isfinite(v) for v in self.last_losses.values()):
            raise TrainingDivergedError("Kayıp değeri sonlu değil", self._dump("nan_loss"))
        return dict(self.last_losses)

    def skill_update_phase(self):
        """
        Beceri aşaması: her beceri kendi etiketli kayıtlarıyla bir beceri
        kaybı adımı atar, ardından Q tabanlı performansla ilgi puanları
        güncellenir. Etiketsiz beceriler puanlarını taşır.

        Returns:
            dict: Beceri kayıpları ve performans vektörü
        """
        n = len(self.skills)
        performance = np.full(n, np.nan)
        losses = np.full(n, np.nan)
        if self.skills_tied:
            return {"skill_losses": losses, "performance": performance}

        b = self.config.batch_size
        for i, skill in enumerate(self.skills):
            entries = self._interval[i]
            if not entries:
                continue
            states = np.array([s for s, _ in entries])
            actions = np.array([a for _, a in entries])
            performance[i] = float(np.mean(self.critics.min_q(states, actions)))

            if len(states) > b:
                states = states[np.sort(self.batch_rng.choice(len(states), size=b, replace=False))]
            batch = SkillBatch.for_skill(skill, states, mean_action(self.policy, states))
            losses[i], grad = skill_loss(skill, batch, self.skills.beta)
            skill.policy.params, self.skill_opts[i] = adam_step(self.skill_opts[i], skill.policy.params, grad)

        update_relevance(self.skills, performance, self.config.eta)
        self._interval = [[] for _ in range(n)]
        self.logger.debug(f"Beceri aşaması tamamlandı: performans={performance}, ilgi={self.skills.relevance}")
        return {"skill_losses": losses, "performance": performance}

    # ------------------------------------------------------------------
    # Tanı büyüklükleri
    # ------------------------------------------------------------------

    def mixture_weights(self):
        if self.config.mode == "sac":
            return np.ones(1)
        return selection_probs(self.skills)

    def diagnostic_states(self):
        """
        Tanı büyüklükleri için durumlar: son türev topluluğu, yoksa belleğin ilk kayıtları
        """
        if self._last_sample is not None:
            return self._last_sample.states
        if len(self.buffer) == 0:
            return None
        return self.buffer.states[:min(len(self.buffer), self.config.batch_size)]

    def integrated_objective(self, states):
        """
        J_integrated ≈ Σ_i P(i)·[mean_b min_j Q(s_b, μ_i(s_b)) + α·mean_b H(π_i(·|s_b))]

        Eylemler becerinin ortalama eylemidir; hesap deterministiktir.

        Args:
            states (array-like): (B, d_s) durumlar

        Returns:
            tuple: (J, ağırlıklı entropi, bileşen Q ortalamaları, bileşen entropileri)
        """
        weights = self.mixture_weights()
        q_means = np.zeros(len(weights))
        entropies = np.zeros(len(weights))
        for i in range(len(weights)):
            policy = self.acting_policy(i)
            q_means[i] = float(np.mean(self.critics.min_q(states, mean_action(policy, states))))
            entropies[i] = float(np.mean(entropy(policy, states)))
        j = float(np.sum(weights * (q_means + self.critics.alpha * entropies)))
        return j, float(np.sum(weights * entropies)), q_means, entropies

    def _record(self, episode_return, active_skill):
        states = self.diagnostic_states()
        if states is None:
            j, h = math.nan, math.nan
        else:
            j, h, _, _ = self.integrated_objective(states)
        return LogRecord(step=self.total_steps, episode=self.episodes, episode_return=episode_return,
                         entropy=h, active_skill=active_skill, loss_q1=self.last_losses["loss_q1"],
                         loss_q2=self.last_losses["loss_q2"], loss_pi=self.last_losses["loss_pi"],
                         j_integrated=j, relevance=tuple(self.skills.relevance.tolist()))

    # ------------------------------------------------------------------
    # Eğitim ve değerlendirme
    # ------------------------------------------------------------------

    def _episode_seed(self):
        return int(self.env_rng.integers(0, 2 ** 31 - 1))

    def train(self, env, total_steps, eval_env=None, eval_interval=0, eval_episodes=0):
        """
        Ortam adımları, türev adımları ve beceri aşamalarını sırayla yürütür

        Args:
            env: Eğitim ortamı
            total_steps (int): Toplam ortam adımı
            eval_env (optional): Değerlendirme ortamı
            eval_interval (int): Değerlendirme aralığı (0 = kapalı)
            eval_episodes (int): Değerlendirme bölüm sayısı

        Returns:
            RunLog: Eğitim günlüğü

        Raises:
            TrainingDivergedError: Kayıp NaN olduğunda
        """
        if env.spec != self.spec:
            raise ShapeError("Ortam tanımı ajan tanımıyla uyuşmuyor")
        run_log = RunLog(len(self.skills))
        if total_steps <= 0:
            return run_log

        cfg = self.config
        state = env.reset(self._episode_seed())
        episode_return = 0.0
        done_steps = 0
        active_skill = 0

        try:
            while done_steps < total_steps:
                for _ in range(cfg.env_steps_per_iteration):
                    if done_steps >= total_steps:
                        break
                    if self.total_steps < cfg.warmup_steps:
                        action, active_skill = self._warmup_action()
                    else:
                        action, active_skill = self.act(state)

                    next_state, reward, done = env.step(self.spec.scale_action(action))
                    terminal = done and not cfg.bootstrap_on_timeout
                    self.store(Transition(state, action, reward, next_state, terminal, active_skill))
                    self.total_steps += 1
                    done_steps += 1
                    episode_return += reward
                    state = next_state

                    if not self.skills_tied and self.total_steps % cfg.skill_update_interval == 0:
                        self.skill_update_phase()

                    if done:
                        self.episodes += 1
                        run_log.append(self._record(episode_return, active_skill))
                        self.logger.debug(f"Bölüm {self.episodes} bitti: getiri={episode_return:.3f}")
                        state = env.reset(self._episode_seed())
                        episode_return = 0.0

                    if self.total_steps % cfg.log_interval == 0:
                        run_log.append(self._record(math.nan, active_skill))
                        self.logger.info(f"Adım {self.total_steps}: kayıplar={self.last_losses}, ilgi={self.skills.relevance.round(3).tolist()}")

                    if eval_env is not None and eval_interval > 0 and self.total_steps % eval_interval == 0:
                        result = self.evaluate(eval_env, eval_episodes)
                        run_log.evaluations.append(EvalRecord(self.total_steps, *result))

                if self.total_steps >= cfg.warmup_steps:
                    for _ in range(cfg.gradient_steps_per_iteration):
                        self.gradient_step()
        except TrainingDivergedError as e:
            self.logger.error(f"Eğitim ıraksadı: {str(e)}")
            e.run_log = run_log
            raise
        except NonFiniteError as e:
            self.logger.error(f"Eğitim ıraksadı: {str(e)}")
            error = TrainingDivergedError(str(e), self._dump("non_finite"))
            error.run_log = run_log
            raise error from e

        return run_log

    def evaluation_seed_base(self):
        return EVAL_SEED_OFFSET + 1000 * self.config.seed

    def evaluate(self, env, episodes, mixture_samples=64):
        """
        Öğrenme olmadan deterministik bölümler

        SDSRA'da en yüksek ilgi puanlı becerinin ortalama eylemi (veya
        eval_policy=mixture ise her adımda çekilen becerinin ortalama eylemi),
        SAC'ta π_φ'nin ortalama eylemi kullanılır. Ajan durumu değişmez.

        Args:
            env: Değerlendirme ortamı
            episodes (int): Bölüm sayısı (pozitif)
            mixture_samples (int): Karışım entropisi için durum başına örnek

        Returns:
            tuple: (ortalama getiri, ortalama entropi, karışım entropisi tahmini)
        """
        if episodes <= 0:
            raise ValueError(f"Değerlendirme bölüm sayısı pozitif olmalı: {episodes}")

        seed_base = self.evaluation_seed_base()
        rng = np.random.default_rng(seed_base)
        weights = self.mixture_weights()
        mixture = self.config.mode == "sdsra" and self.config.eval_policy == "mixture"
        best = 0 if self.config.mode == "sac" else self.skills.best_index()

        returns = []
        visited = []
        for episode in range(episodes):
            state = env.reset(seed_base + episode)
            total = 0.0
            done = False
            while not done:
                index = int(rng.choice(len(weights), p=weights)) if mixture else best
                action = mean_action(self.acting_policy(index), state)
                visited.append(state)
                state, reward, done = env.step(self.spec.scale_action(action))
                total += reward
            returns.append(total)

        states = np.array(visited)
        if mixture:
            mean_h = float(sum(w * np.mean(entropy(self.acting_policy(i), states)) for i, w in enumerate(weights)))
        else:
            mean_h = float(np.mean(entropy(self.acting_policy(best), states)))
        policies = [self.acting_policy(i) for i in range(len(weights))]
        mix_h = mixture_entropy_estimate(policies, weights, states[::20], rng, samples=mixture_samples)
        return float(np.mean(returns)), mean_h, mix_h

    # ------------------------------------------------------------------
    # Kontrol noktaları
    # ------------------------------------------------------------------

    def _networks(self):
        nets = {
            "policy": self.policy.trunk,
            "q1": self.critics.q1,
            "q2": self.critics.q2,
            "target_q1": self.critics.target_q1,
            "target_q2": self.critics.target_q2,
        }
        for skill in self.skills:
            nets[f"skill_{skill.id}"] = skill.policy.trunk
        return nets

    def save_checkpoint(self, directory):
        """
        Her ağ için bir dosya ve ilgi puanı bloğu yazar

        Args:
            directory (str): Hedef dizin
        """
        os.makedirs(directory, exist_ok=True)
        for name, net in self._networks().items():
            save_params(net.params, os.path.join(directory, f"{name}.ckpt"))
        relevance = ParamVector(self.skills.relevance, [("relevance", (len(self.skills),))])
        save_params(relevance, os.path.join(directory, "relevance.ckpt"))
        self.logger.info(f"Kontrol noktası kaydedildi: {directory}")

    def load_checkpoint(self, directory):
        """
        Kontrol noktasını okur; tanımlayıcılar mevcut ağlarla uyuşmalıdır

        Args:
            directory (str): Kaynak dizin
        """
        loaded = {}
        for name, net in self._networks().items():
            loaded[name] = load_params(os.path.join(directory, f"{name}.ckpt"), expected_layout=net.params.layout)
        relevance = load_params(os.path.join(directory, "relevance.ckpt"),
                                expected_layout=[("relevance", (len(self.skills),))])

        for name, net in self._networks().items():
            net.params = loaded[name]
        self.skills.set_relevance(relevance.values)
        self.logger.info(f"Kontrol noktası yüklendi: {directory}")
